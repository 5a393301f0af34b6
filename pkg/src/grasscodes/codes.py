"""Linear [n,k]-codes over GF(q) and their strength classification.

A code is a k-subspace of F_q^n carried by a canonical RREF generator
matrix.  The central quantity is the minimum distance of the dual code:
a code has *strength* t when every nonzero dual word has weight at least
t+1, equivalently when every t columns of a generator matrix are
linearly independent, equivalently when the code meets every
coordinate subspace of codimension t in dimension exactly k - t.  All
three criteria are implemented and exposed so they can be checked
against each other.

Strength echelons recover the classical families: strength >= 1 is
non-degenerate, >= 2 projective, and strength k exactly the MDS codes.

Monomial maps (coordinate permutation composed with nonzero column
scalings) act on codes and preserve all of the above.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .errors import (
    BadIndicesError,
    BadTError,
    DimensionMismatchError,
    ParseError,
    TooLargeExactError,
)
from .gf import FieldCtx, field_of_order
from .linalg import MatrixGF, Subspace, Vector, intersect, kernel, rref, vsub

INFINITE = math.inf

EXACT_WORD_CAP = 1 << 24
_BULK_THRESHOLD = 1 << 12

Criterion = Literal["dual_distance", "columns", "coord_meet"]
CRITERIA: tuple[Criterion, ...] = ("dual_distance", "columns", "coord_meet")


# -- vectors ------------------------------------------------------------------

def weight(v: Sequence[int]) -> int:
    """Number of nonzero coordinates."""
    return sum(1 for x in v if x)


def hamming_distance(ctx: FieldCtx, u: Sequence[int], v: Sequence[int]) -> int:
    return weight(vsub(ctx, u, v))


# -- coordinate subspaces -----------------------------------------------------

@dataclass(frozen=True)
class CoordSubspace:
    """Vectors vanishing at the given (1-based, strictly increasing) coordinates."""

    n: int
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = self.indices
        if any(not 1 <= i <= self.n for i in idx) or any(
            a >= b for a, b in zip(idx, idx[1:])
        ):
            raise BadIndicesError(f"indices {idx} not strictly increasing in [1, {self.n}]")

    @property
    def dim(self) -> int:
        return self.n - len(self.indices)

    def as_subspace(self, ctx: FieldCtx) -> Subspace:
        zeroed = set(i - 1 for i in self.indices)
        rows = [
            [1 if j == p else 0 for j in range(self.n)]
            for p in range(self.n)
            if p not in zeroed
        ]
        return Subspace.from_vectors(ctx, self.n, rows)


def coordinate_subspace(n: int, indices: Iterable[int]) -> CoordSubspace:
    return CoordSubspace(n, tuple(indices))


# -- monomial maps --------------------------------------------------------------

@dataclass(frozen=True)
class MonomialMap:
    """Coordinate permutation plus nonzero column scalars.

    Source column j lands at position perm[j] (0-based) scaled by
    scalars[j]; permutation first, scaling attached to the source index.
    """

    ctx: FieldCtx
    perm: tuple[int, ...]
    scalars: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise DimensionMismatchError("perm is not a permutation")
        if len(self.scalars) != n or any(s == 0 for s in self.scalars):
            raise DimensionMismatchError("need n nonzero scalars")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "MonomialMap":
        return cls(ctx, tuple(range(n)), (1,) * n)

    @classmethod
    def random(cls, ctx: FieldCtx, n: int, rng) -> "MonomialMap":
        perm = list(range(n))
        rng.shuffle(perm)
        scalars = tuple(rng.randrange(1, ctx.q) for _ in range(n))
        return cls(ctx, tuple(perm), scalars)

    def apply_to_matrix(self, m: MatrixGF) -> MatrixGF:
        if m.ncols != self.n or m.ctx != self.ctx:
            raise DimensionMismatchError("matrix shape/field does not match map")
        ctx = self.ctx
        out = [[0] * self.n for _ in range(m.nrows)]
        for j, (dest, s) in enumerate(zip(self.perm, self.scalars)):
            for i in range(m.nrows):
                out[i][dest] = ctx.mul(s, m.rows[i][j])
        return MatrixGF(ctx, out, ncols=self.n)

    def apply_to_vector(self, v: Sequence[int]) -> Vector:
        out = [0] * self.n
        for j, (dest, s) in enumerate(zip(self.perm, self.scalars)):
            out[dest] = self.ctx.mul(s, v[j])
        return tuple(out)

    def compose(self, other: "MonomialMap") -> "MonomialMap":
        """self ∘ other: apply other first, then self."""
        if other.n != self.n or other.ctx != self.ctx:
            raise DimensionMismatchError("cannot compose maps on different spaces")
        ctx = self.ctx
        perm = tuple(self.perm[other.perm[j]] for j in range(self.n))
        scalars = tuple(
            ctx.mul(other.scalars[j], self.scalars[other.perm[j]]) for j in range(self.n)
        )
        return MonomialMap(ctx, perm, scalars)

    def inverse(self) -> "MonomialMap":
        n = self.n
        perm = [0] * n
        scalars = [1] * n
        for j in range(n):
            perm[self.perm[j]] = j
            scalars[self.perm[j]] = self.ctx.inv(self.scalars[j])
        return MonomialMap(self.ctx, tuple(perm), tuple(scalars))


# -- linear codes -----------------------------------------------------------------

class LinearCode:
    """A linear code: a subspace of F_q^n with coding-theoretic accessors.

    Classification caches (dual minimum distance, strength) are write-once.
    """

    __slots__ = ("space", "_dual_min_distance", "_strength")

    def __init__(self, space: Subspace):
        self.space = space
        self._dual_min_distance = None
        self._strength = None

    @classmethod
    def from_generator(cls, ctx: FieldCtx, rows: Iterable[Sequence[int]], n: int | None = None) -> "LinearCode":
        vecs = [tuple(r) for r in rows]
        if n is None:
            if not vecs:
                raise DimensionMismatchError("empty generator needs explicit n")
            n = len(vecs[0])
        return cls(Subspace.from_vectors(ctx, n, vecs))

    @property
    def ctx(self) -> FieldCtx:
        return self.space.ctx

    @property
    def n(self) -> int:
        return self.space.ambient_dim

    @property
    def k(self) -> int:
        return self.space.dim

    @property
    def generator(self) -> MatrixGF:
        return self.space.basis

    def codewords(self):
        return self.space.vectors()

    def __eq__(self, other):
        return isinstance(other, LinearCode) and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def __repr__(self):
        return f"LinearCode[{self.n},{self.k}]q{self.ctx.q}"


def dual(c: LinearCode) -> LinearCode:
    """The orthogonal code under the standard bilinear form; dim n - k."""
    return LinearCode(kernel(c.generator))


def min_distance(c: LinearCode, max_words: int = EXACT_WORD_CAP):
    """Exact minimum weight over nonzero codewords, by full enumeration.

    The zero code has no nonzero word; by convention its distance is
    INFINITE, which keeps every strength threshold satisfied.
    Raises TooLargeExactError when q^k exceeds max_words.
    """
    k = c.k
    if k == 0:
        return INFINITE
    q = c.ctx.q
    total = q**k
    if total > max_words:
        raise TooLargeExactError(f"q^k = {total} exceeds exact enumeration cap {max_words}")
    if total > _BULK_THRESHOLD and q <= 256:
        from . import bulk

        return bulk.min_weight_in_span(c.ctx, [list(r) for r in c.generator.rows])
    best = c.n + 1
    for v in c.space.vectors():
        w = weight(v)
        if 0 < w < best:
            best = w
            if best == 1:
                break
    return best


def min_distance_bound(c: LinearCode, samples: int = 2000, rng=None) -> int:
    """Upper bound on the minimum distance from sampled nonzero codewords.

    Not exact: the true distance is <= the returned value.  Use when
    q^k exceeds the exact enumeration cap.
    """
    import random

    rng = rng or random.Random(0)
    k, q, ctx = c.k, c.ctx.q, c.ctx
    if k == 0:
        return INFINITE
    rows = c.generator.rows
    best = c.n
    for _ in range(samples):
        coeffs = [rng.randrange(q) for _ in range(k)]
        if not any(coeffs):
            coeffs[rng.randrange(k)] = 1 + rng.randrange(q - 1)
        v = [0] * c.n
        for ci, row in zip(coeffs, rows):
            if ci:
                v = [ctx.add(x, ctx.mul(ci, y)) for x, y in zip(v, row)]
        best = min(best, weight(v))
    return best


def dual_min_distance(c: LinearCode, max_words: int = EXACT_WORD_CAP):
    """Minimum distance of the dual code (cached on the code)."""
    if c._dual_min_distance is None:
        c._dual_min_distance = min_distance(dual(c), max_words=max_words)
    return c._dual_min_distance


# -- strength classification ---------------------------------------------------

def _columns_independent(c: LinearCode, cols: Sequence[int]) -> bool:
    sub = MatrixGF(c.ctx, [[r[j] for j in cols] for r in c.generator.rows], ncols=len(cols))
    _, rank = rref(sub)
    return rank == len(cols)


def has_strength(c: LinearCode, t: int, criterion: Criterion = "dual_distance") -> bool:
    """Whether every t columns of the generator are independent.

    Three equivalent routes, selectable so they can be cross-checked:
    dual_distance (dual minimum distance >= t+1), columns (rank of every
    t-column submatrix), coord_meet (dim of the meet with every
    codimension-t coordinate subspace equals k - t).
    """
    n = c.n
    if not 1 <= t <= n:
        raise BadTError(f"t must be in [1, {n}], got {t}")
    if criterion == "dual_distance":
        return dual_min_distance(c) >= t + 1
    if criterion == "columns":
        return all(
            _columns_independent(c, cols) for cols in itertools.combinations(range(n), t)
        )
    if criterion == "coord_meet":
        for idx in itertools.combinations(range(1, n + 1), t):
            cs = coordinate_subspace(n, idx).as_subspace(c.ctx)
            if intersect(c.space, cs).dim != c.k - t:
                return False
        return True
    raise ValueError(f"unknown criterion {criterion!r}")


def strength(c: LinearCode) -> int:
    """Largest t with strength t (0 = degenerate), capped at k.

    Equals dual minimum distance minus 1 (INFINITE capping at k), found
    as the shortest dependent generator-column subset, so it never needs
    a dual codeword enumeration.
    """
    if c._strength is None:
        n, k = c.n, c.k
        found = None
        for s in range(1, min(k + 1, n) + 1):
            for cols in itertools.combinations(range(n), s):
                if not _columns_independent(c, cols):
                    found = s
                    break
            if found is not None:
                break
        c._strength = k if found is None else min(found - 1, k)
    return c._strength


def is_mds(c: LinearCode) -> bool:
    """Strength k: every k columns independent; Singleton bound met."""
    return c.k >= 1 and strength(c) == c.k


def classify(c: LinearCode) -> dict:
    """Classification summary used by the CLI."""
    t_max = strength(c)
    dmd = dual_min_distance(c)
    return {
        "q": c.ctx.q,
        "n": c.n,
        "k": c.k,
        "strength": t_max,
        "dual_min_distance": None if dmd == INFINITE else int(dmd),
        "degenerate": t_max == 0,
        "projective": t_max >= 2,
        "mds": c.k >= 1 and t_max == c.k,
    }


def apply_monomial(m: MonomialMap, c: LinearCode) -> LinearCode:
    """Image code; parameters and strength are preserved."""
    if m.n != c.n or m.ctx != c.ctx:
        raise DimensionMismatchError("map and code live in different spaces")
    return LinearCode.from_generator(c.ctx, m.apply_to_matrix(c.generator).rows, n=c.n)


# -- generator-matrix text format -----------------------------------------------

def format_generator(c: LinearCode) -> str:
    """Shared text format: 'q n k' header then k rows of encodings."""
    lines = [f"{c.ctx.q} {c.n} {c.k}"]
    for r in c.generator.rows:
        lines.append(" ".join(str(x) for x in r))
    return "\n".join(lines) + "\n"


def parse_generator(text: str) -> LinearCode:
    """Parse the shared text format ('#' lines are comments)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty generator file")
    head = lines[0].split()
    if len(head) != 3:
        raise ParseError(f"header must be 'q n k', got {lines[0]!r}")
    try:
        q, n, k = (int(x) for x in head)
    except ValueError as exc:
        raise ParseError(f"non-integer header: {lines[0]!r}") from exc
    if k < 1 or n < 1 or k > n:
        raise ParseError(f"need 1 <= k <= n, got n={n} k={k}")
    try:
        ctx = field_of_order(q)
    except Exception as exc:
        raise ParseError(f"bad field order {q}: {exc}") from exc
    if len(lines) - 1 != k:
        raise ParseError(f"expected {k} generator rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        try:
            row = [int(x) for x in ln.split()]
        except ValueError as exc:
            raise ParseError(f"non-integer entry in row {ln!r}") from exc
        if len(row) != n:
            raise ParseError(f"row {ln!r} has {len(row)} entries, expected {n}")
        if any(not 0 <= x < q for x in row):
            raise ParseError(f"entry outside [0, {q}) in row {ln!r}")
        rows.append(row)
    code = LinearCode.from_generator(ctx, rows, n=n)
    if code.k != k:
        raise ParseError(f"generator rows are dependent: rank {code.k} < k={k}")
    return code
