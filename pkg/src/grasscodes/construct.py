"""Constructive algorithms on strength-t codes.

Everything the verification sweeps check *for existence* is built here
*explicitly*: MDS generators from Vandermonde evaluations, single
adjacency steps between codes that stay inside the strength-t class,
dimension shrinking that protects a prescribed subspace, full geodesic
paths, and opposite (maximum-distance) equivalent codes.

All scans are deterministic: hyperplanes and coset representatives are
enumerated in a fixed canonical order and the first success is returned,
so certificates are reproducible.  Below the field-size bounds that
guarantee success the operations stay usable but fail loudly
(NoStepFound / NoShrinkFound / NoLambda / PathFailed) instead of
silently degrading.

During every candidate scan the spanned subspace's meet with each
codimension-t coordinate subspace is measured; the theory says the meet
dimension never exceeds k - t + 1, and the scan counts (and refuses to
continue past) any violation.  The counters live in `scan_stats` so a
verification run can assert that checks actually happened and that no
violation occurred.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .codes import LinearCode, MonomialMap, apply_monomial, coordinate_subspace, strength
from .errors import (
    BadHyperplaneError,
    BadInnerSubspaceError,
    DependentVectorsError,
    DuplicatePointsError,
    InternalInvariantError,
    NoLambdaError,
    NoShrinkFoundError,
    NoStepFoundError,
    NotEnoughPointsError,
    NotInCtError,
    NotSubspaceError,
    PathFailedError,
    RepInHyperplaneError,
    StepDepthError,
)
from .gf import FieldCtx
from .linalg import (
    MatrixGF,
    Subspace,
    Vector,
    complement_basis,
    hyperplanes_containing,
    intersect,
    projective_reps,
    rref,
)


# -- colors --------------------------------------------------------------------

class _Sentinel:
    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name


INFINITY_COLOR = _Sentinel("INFINITY_COLOR")
NOT_COLORABLE = _Sentinel("NOT_COLORABLE")

Color = object  # a 1-based strictly increasing tuple, or INFINITY_COLOR


def color_sort_key(color) -> tuple:
    """Total order on colors: lexicographic tuples, infinity above all."""
    if color is INFINITY_COLOR:
        return (1, ())
    return (0, tuple(color))


def coordinate_tuples(n: int, t: int):
    """All colors (i_1 < ... < i_t), 1-based, in lexicographic order."""
    return itertools.combinations(range(1, n + 1), t)


# -- scan diagnostics ------------------------------------------------------------

@dataclass
class ScanStats:
    """Counters over coordinate-meet measurements made inside scans.

    candidate_profiles keeps the meet-dimension tuples of the most recent
    candidate spans (diagnostics only; nothing asserts on them)."""

    meet_checks: int = 0
    meet_violations: int = 0
    candidate_profiles: deque = field(default_factory=lambda: deque(maxlen=256))

    def reset(self):
        self.meet_checks = 0
        self.meet_violations = 0
        self.candidate_profiles.clear()


scan_stats = ScanStats()


def _meet_dim(ctx: FieldCtx, rows, cols) -> int:
    """dim of the meet with the coordinate subspace zeroing `cols`:
    k minus the rank of the selected generator columns."""
    k = len(rows)
    sub = MatrixGF(ctx, [[r[j] for j in cols] for r in rows], ncols=len(cols))
    _, rank = rref(sub)
    return k - rank


def _span_meets_profile(space: Subspace, t: int, enforce_bound: bool) -> list[int]:
    """Meet dimensions of `space` with every codimension-t coordinate
    subspace, in color order.  With enforce_bound the candidate is a span
    <H, z> off a strength-t code, where dims above k - t + 1 are
    impossible; hitting one is counted and raised."""
    ctx = space.ctx
    n, k = space.ambient_dim, space.dim
    rows = space.basis.rows
    dims = []
    for color in coordinate_tuples(n, t):
        d = _meet_dim(ctx, rows, [i - 1 for i in color])
        scan_stats.meet_checks += 1
        if enforce_bound and d > k - t + 1:
            scan_stats.meet_violations += 1
            raise InternalInvariantError(
                f"coordinate meet dimension {d} exceeds bound {k - t + 1} at {color}"
            )
        dims.append(d)
    if enforce_bound:
        scan_stats.candidate_profiles.append(tuple(dims))
    return dims


def _span_in_class(space: Subspace, t: int, enforce_bound: bool) -> bool:
    k = space.dim
    return all(d == k - t for d in _span_meets_profile(space, t, enforce_bound))


def _require_strength(c: LinearCode, t: int, who: str) -> None:
    if strength(c) < t:
        raise NotInCtError(f"{who} has strength {strength(c)} < {t}")


# -- MDS generator ------------------------------------------------------------------

def vandermonde_mds(
    ctx: FieldCtx, n: int, k: int, points: list[int] | None = None
) -> LinearCode:
    """Strength-k code from rows (a_j^i), i = 0..k-1, over n distinct points.

    Every k x k minor is a Vandermonde determinant, a product of
    differences of distinct points, hence nonzero: all k columns subsets
    are independent.  Default points: the first n field elements by
    encoding (requires n <= q).
    """
    if not 1 <= k <= n:
        raise NotEnoughPointsError(f"need 1 <= k <= n, got k={k}, n={n}")
    if points is None:
        if n > ctx.q:
            raise NotEnoughPointsError(f"n={n} > q={ctx.q} and no points supplied")
        points = list(range(n))
    else:
        points = [int(a) for a in points]
        if len(points) != n:
            raise NotEnoughPointsError(f"need {n} points, got {len(points)}")
        if len(set(points)) != n:
            raise DuplicatePointsError("evaluation points must be pairwise distinct")
        if any(not 0 <= a < ctx.q for a in points):
            raise ValueError("points outside field encoding range")
    rows = [[ctx.pow(a, i) for a in points] for i in range(k)]
    code = LinearCode.from_generator(ctx, rows, n=n)
    if code.k != k:  # pragma: no cover - Vandermonde rows are independent
        raise InternalInvariantError("Vandermonde generator lost rank")
    return code


# -- coset coloring -------------------------------------------------------------------

def _validate_coloring_inputs(h: Subspace, x: LinearCode, y: LinearCode, t: int):
    _require_strength(x, t, "x")
    _require_strength(y, t, "y")
    if h.dim != x.k - 1 or not x.space.contains(h):
        raise BadHyperplaneError("h is not a hyperplane of x")
    xy = intersect(x.space, y.space)
    if not h.contains(xy):
        raise BadHyperplaneError("h does not contain x ∩ y")
    return xy


def psi_color(h: Subspace, x: LinearCode, y: LinearCode, p, t: int):
    """Color of the coset [p] in y modulo (h ∩ y).

    The lexicographically least t-set of coordinates whose coordinate
    subspace meets <h, p> in the maximal dimension k - t + 1, or
    INFINITY_COLOR when the span already meets every coordinate subspace
    in dimension k - t (i.e. lies in the strength-t class).
    Constant on cosets and on scalar multiples of p.
    """
    _validate_coloring_inputs(h, x, y, t)
    p = tuple(p)
    if not y.space.contains_vector(p):
        raise NotSubspaceError("p is not a vector of y")
    if h.contains_vector(p):
        raise RepInHyperplaneError("representative p lies in h")
    span = Subspace.from_vectors(x.ctx, x.n, list(h.basis.rows) + [p])
    k = x.k
    dims = _span_meets_profile(span, t, enforce_bound=True)
    for color, d in zip(coordinate_tuples(x.n, t), dims):
        if d == k - t + 1:
            return color
    return INFINITY_COLOR


def _quotient_independent(h: Subspace, y: LinearCode, vectors) -> Subspace:
    """The subspace h∩y the quotient is taken by; raises if the vectors
    are dependent modulo it."""
    hy = intersect(h, y.space)
    span = Subspace.from_vectors(
        y.ctx, y.n, list(hy.basis.rows) + [tuple(v) for v in vectors]
    )
    if span.dim != hy.dim + len(list(vectors)):
        raise DependentVectorsError("vectors are dependent modulo h ∩ y")
    return hy


def is_monochromatic_basis(h: Subspace, x: LinearCode, y: LinearCode, vectors, t: int) -> bool:
    """All vectors share one finite color (vectors independent mod h ∩ y)."""
    vectors = [tuple(v) for v in vectors]
    _quotient_independent(h, y, vectors)
    colors = {color_sort_key(psi_color(h, x, y, v, t)) for v in vectors}
    return len(colors) == 1 and colors != {color_sort_key(INFINITY_COLOR)}


def subspace_color(h: Subspace, x: LinearCode, y: LinearCode, lifted_basis, t: int):
    """Least color of a monochromatic basis of the quotient subspace
    spanned by lifted_basis, or NOT_COLORABLE.

    A monochromatic basis lies inside a single color class, and any color
    class of full rank contains one, so the exact answer is the least
    finite color whose class spans the subspace: no basis sampling needed.
    """
    lifted_basis = [tuple(v) for v in lifted_basis]
    hy = _quotient_independent(h, y, lifted_basis)
    s = len(lifted_basis)
    ctx = y.ctx
    classes: dict[tuple, list] = {}
    for lam in projective_reps(ctx, s):
        v = [0] * y.n
        for li, b in zip(lam, lifted_basis):
            if li:
                v = [ctx.add(a, ctx.mul(li, c)) for a, c in zip(v, b)]
        color = psi_color(h, x, y, tuple(v), t)
        if color is INFINITY_COLOR:
            continue
        classes.setdefault(tuple(color), []).append(tuple(v))
    base_rows = list(hy.basis.rows)
    for color in sorted(classes):
        vecs = classes[color]
        span = Subspace.from_vectors(ctx, y.n, base_rows + vecs)
        if span.dim - hy.dim == s:
            return color
    return NOT_COLORABLE


# -- one geodesic step -----------------------------------------------------------------

@dataclass
class StepCertificate:
    """Record of one constructed step; every field is re-verifiable."""

    z_code: LinearCode
    hyperplane_used: Subspace
    coset_rep: Vector
    dim_x_meet_z: int
    dim_z_meet_y: int
    class_member: bool


def _coset_rep_vectors(ctx: FieldCtx, xy: Subspace, y: LinearCode):
    """Canonical nonzero coset representatives of y modulo (x ∩ y):
    projective combinations of the fixed complement basis."""
    comp = complement_basis(xy, y.space)
    d = len(comp)
    for lam in projective_reps(ctx, d):
        v = [0] * y.n
        for li, b in zip(lam, comp):
            if li:
                v = [ctx.add(a, ctx.mul(li, c)) for a, c in zip(v, b)]
        yield tuple(v)


def _step_candidates(x: LinearCode, y: LinearCode, t: int):
    """Deterministic (hyperplane, rep, span) scan order shared by
    step_toward and count_step_codes."""
    xy = intersect(x.space, y.space)
    ctx = x.ctx
    for h in hyperplanes_containing(x.space, xy):
        for z in _coset_rep_vectors(ctx, xy, y):
            span = Subspace.from_vectors(ctx, x.n, list(h.basis.rows) + [z])
            yield h, z, span


def _step_preconditions(x: LinearCode, y: LinearCode, t: int) -> int:
    _require_strength(x, t, "x")
    _require_strength(y, t, "y")
    d = x.k - intersect(x.space, y.space).dim
    if d == 0:
        raise StepDepthError("codes are equal; no step to make")
    if d > t:
        raise StepDepthError(f"pair distance {d} exceeds strength {t}")
    return d


def step_toward(x: LinearCode, y: LinearCode, t: int) -> StepCertificate:
    """First code Z adjacent to x, one closer to y, inside the class.

    Scans hyperplanes of x through x∩y in canonical order and, inside
    each, coset representatives of y; returns the first spanned code of
    strength t.   With q at least the number of colors the very first
    hyperplane must succeed; below that bound the scan may fall through
    and ultimately raise NoStepFound.
    """
    d = _step_preconditions(x, y, t)
    k = x.k
    for h, z, span in _step_candidates(x, y, t):
        if not _span_in_class(span, t, enforce_bound=True):
            continue
        z_code = LinearCode(span)
        dim_xz = intersect(x.space, span).dim
        dim_zy = intersect(span, y.space).dim
        if dim_xz != k - 1 or dim_zy != k - d + 1:
            raise InternalInvariantError(
                f"step dims ({dim_xz}, {dim_zy}) differ from forced "
                f"({k - 1}, {k - d + 1})"
            )
        return StepCertificate(z_code, h, z, dim_xz, dim_zy, True)
    raise NoStepFoundError(
        f"no strength-{t} step between the codes (q={x.ctx.q} below the bound?)"
    )


def verify_step_certificate(
    x: LinearCode, y: LinearCode, t: int, cert: StepCertificate
) -> bool:
    """Re-derive every recorded check from scratch (independent routes)."""
    z = cert.z_code
    expected_span = Subspace.from_vectors(
        x.ctx, x.n, list(cert.hyperplane_used.basis.rows) + [cert.coset_rep]
    )
    return (
        z.space == expected_span
        and intersect(x.space, z.space).dim == cert.dim_x_meet_z
        and intersect(z.space, y.space).dim == cert.dim_z_meet_y
        and (strength(z) >= t) == cert.class_member
        and x.space.contains(cert.hyperplane_used)
        and y.space.contains_vector(cert.coset_rep)
    )


def count_step_codes(x: LinearCode, y: LinearCode, t: int) -> int:
    """Number of distinct valid step codes over the whole scan domain."""
    _step_preconditions(x, y, t)
    found = set()
    for _, _, span in _step_candidates(x, y, t):
        if _span_in_class(span, t, enforce_bound=True):
            found.add(span)
    return len(found)


# -- dimension shrink --------------------------------------------------------------------

def shrink(x: LinearCode, inner: Subspace, t: int) -> LinearCode:
    """First strength-t hyperplane of x containing `inner`.

    A hyperplane works iff it contains none of the meets of x with the
    codimension-t coordinate subspaces; the counting bound guarantees one
    exists whenever q is at least the number of colors.
    """
    _require_strength(x, t, "x")
    if not x.space.contains(inner) or inner.dim >= x.k - t:
        raise BadInnerSubspaceError(
            f"need inner ⊂ x with dim {inner.dim} < k - t = {x.k - t}"
        )
    ctx = x.ctx
    meets = [
        intersect(x.space, coordinate_subspace(x.n, color).as_subspace(ctx))
        for color in coordinate_tuples(x.n, t)
    ]
    for h in hyperplanes_containing(x.space, inner):
        if any(h.contains(m) for m in meets):
            continue
        shrunk = LinearCode(h)
        if strength(shrunk) < t:  # pragma: no cover - criterion is exact
            raise InternalInvariantError("hyperplane passed the meet criterion "
                                         "but is not in the class")
        return shrunk
    raise NoShrinkFoundError(
        f"no strength-{t} hyperplane of x over U (q={ctx.q} below the bound?)"
    )


# -- geodesic paths ----------------------------------------------------------------------

def geodesic_path(x: LinearCode, y: LinearCode, t: int) -> list[LinearCode]:
    """Path x = Z_0, ..., Z_m = y inside the class with m = k - dim(x∩y).

    While the remaining distance exceeds t, a shrink-and-merge move is
    taken: shrink x to a strength-t hyperplane through x∩y, extend x∩y
    by the first coset representative of y, and span the two; the merged
    code's membership is verified directly, never assumed.  Once the
    distance is at most t, single steps finish the path.
    """
    _require_strength(x, t, "x")
    _require_strength(y, t, "y")
    path = [x]
    cur = x
    guard = 0
    while cur != y:
        guard += 1
        if guard > x.k + 1:  # pragma: no cover
            raise InternalInvariantError("path did not converge")
        xy = intersect(cur.space, y.space)
        d = cur.k - xy.dim
        if d <= t:
            try:
                cert = step_toward(cur, y, t)
            except NoStepFoundError as exc:
                raise PathFailedError(str(exc), partial_path=path) from exc
            cur = cert.z_code
        else:
            try:
                xprime = shrink(cur, xy, t)
            except NoShrinkFoundError as exc:
                raise PathFailedError(str(exc), partial_path=path) from exc
            ctx = cur.ctx
            first_rep = next(_coset_rep_vectors(ctx, xy, y))
            merged = Subspace.from_vectors(
                ctx, cur.n,
                list(xprime.space.basis.rows) + list(xy.basis.rows) + [first_rep],
            )
            if merged.dim != cur.k:
                raise InternalInvariantError(
                    f"merged span has dim {merged.dim}, expected {cur.k}"
                )
            merged_code = LinearCode(merged)
            if strength(merged_code) < t:
                raise PathFailedError(
                    f"merged code fell outside the class (strength "
                    f"{strength(merged_code)} < {t}); q={ctx.q} below the bound?",
                    partial_path=path,
                )
            dim_xt = intersect(cur.space, merged).dim
            dim_ty = intersect(merged, y.space).dim
            if dim_xt != cur.k - 1 or dim_ty != cur.k - d + 1:
                raise InternalInvariantError(
                    f"merge dims ({dim_xt}, {dim_ty}) differ from forced "
                    f"({cur.k - 1}, {cur.k - d + 1})"
                )
            cur = merged_code
        path.append(cur)
    return path


# -- opposite codes ----------------------------------------------------------------------

@dataclass
class OppositeResult:
    """Opposite equivalent code with its full construction chain."""

    code: LinearCode          # D, opposite and equivalent to the input
    witness: MonomialMap      # rho with rho(input) = D
    lam: int                  # the accepted scalar
    info_set_map: MonomialMap  # sigma: pivots-to-front permutation
    permuted_code: LinearCode  # sigma(input)
    scaled_code: LinearCode    # the mu_lambda image of the permuted code


def _info_set_permutation(ctx: FieldCtx, n: int, pivots: list[int]) -> MonomialMap:
    rest = [j for j in range(n) if j not in set(pivots)]
    perm = [0] * n
    for dest, src in enumerate(pivots + rest):
        perm[src] = dest
    return MonomialMap(ctx, tuple(perm), (1,) * n)


def opposite_code(c: LinearCode, t: int) -> OppositeResult:
    """An equivalent code D with dim(c ∩ D) = max(2k - n, 0).

    The generator is put in systematic form over the lexicographically
    first information set (its RREF pivots), the identity and non-pivot
    blocks are swapped by a monomial map with the non-pivot block scaled
    by λ, and λ is chosen by an ascending scan with a direct rank test of
    the stacked generators (no eigenvalue machinery).  At most
    max(k, n-k) scalars can fail, so the scan succeeds whenever
    q > max(k, n-k) + 1.
    """
    _require_strength(c, t, "c")
    ctx, n, k = c.ctx, c.n, c.k
    gen = c.generator
    pivots = [next(j for j, v in enumerate(r) if v) for r in gen.rows]
    sigma = _info_set_permutation(ctx, n, pivots)
    gp = sigma.apply_to_matrix(gen)  # [I_k | M]
    c_prime = LinearCode.from_generator(ctx, gp.rows, n=n)
    target_rank = 2 * k if 2 * k <= n else n
    if 2 * k <= n:
        # source columns [0,k) -> [k,2k); [k,2k) -> [0,k) scaled; rest fixed
        perm = tuple(
            (j + k) if j < k else (j - k) if j < 2 * k else j for j in range(n)
        )
        scaled_src = range(k, 2 * k)
    else:
        m = n - k
        # source [0, m) -> [k, n); [m, k) fixed; [k, n) -> [0, m) scaled
        perm = tuple(
            (j + k) if j < m else j if j < k else (j - k) for j in range(n)
        )
        scaled_src = range(k, n)
    for lam in ctx.all_nonzero():
        mu = MonomialMap(
            ctx, perm, tuple(lam if j in scaled_src else 1 for j in range(n))
        )
        g2 = mu.apply_to_matrix(gp)
        _, rank = rref(gp.stack(g2))
        if rank == target_rank:
            c_lambda = LinearCode.from_generator(ctx, g2.rows, n=n)
            witness = sigma.inverse().compose(mu).compose(sigma)
            d_code = apply_monomial(sigma.inverse(), c_lambda)
            if apply_monomial(witness, c) != d_code:  # pragma: no cover
                raise InternalInvariantError("witness map does not reproduce D")
            expected_meet = max(2 * k - n, 0)
            got = intersect(c.space, d_code.space).dim
            if got != expected_meet:  # pragma: no cover
                raise InternalInvariantError(
                    f"opposite meet dim {got} != {expected_meet}"
                )
            if strength(d_code) < t:  # pragma: no cover - equivalence preserves it
                raise InternalInvariantError("opposite code left the class")
            return OppositeResult(d_code, witness, lam, sigma, c_prime, c_lambda)
    raise NoLambdaError(
        f"no scalar yields an opposite pair (q={ctx.q} at most max(k, n-k)+1?)"
    )
