import itertools

import pytest

from grasscodes.codes import LinearCode, apply_monomial, classify, has_strength, strength
from grasscodes.construct import (
    INFINITY_COLOR,
    NOT_COLORABLE,
    StepCertificate,
    color_sort_key,
    coordinate_tuples,
    count_step_codes,
    geodesic_path,
    is_monochromatic_basis,
    opposite_code,
    psi_color,
    scan_stats,
    shrink,
    step_toward,
    subspace_color,
    vandermonde_mds,
    verify_step_certificate,
)
from grasscodes.errors import (
    BadHyperplaneError,
    BadInnerSubspaceError,
    DependentVectorsError,
    DuplicatePointsError,
    NoLambdaError,
    NoShrinkFoundError,
    NotEnoughPointsError,
    NotInCtError,
    PathFailedError,
    RepInHyperplaneError,
    StepDepthError,
)
from grasscodes.gf import field_new, field_of_order
from grasscodes.grassmann import enumerate_subspaces, grassmann_distance
from grasscodes.linalg import (
    Subspace,
    complement_basis,
    hyperplanes_containing,
    intersect,
    projective_reps,
    q_int,
)

F2 = field_new(2)
F3 = field_new(3)
F5 = field_new(5)
F7 = field_new(7)


def strength_class(ctx, n, k, t):
    idx = enumerate_subspaces(ctx, n, k)
    marks = idx.strength_all()
    return [idx.code_at(i) for i in range(len(idx)) if marks[i] >= t]


# -- vandermonde -----------------------------------------------------------------

def test_vandermonde_example():
    c = vandermonde_mds(F5, 4, 2, points=[0, 1, 2, 3])
    # roots (1,1,1,1) and (0,1,2,3) span the same plane as the canonical rows
    assert c == LinearCode.from_generator(F5, [(1, 1, 1, 1), (0, 1, 2, 3)])
    assert strength(c) == 2
    assert classify(c)["mds"]


def test_vandermonde_default_points_and_full_space():
    c = vandermonde_mds(F5, 4, 4)
    assert c.k == 4 and c.space == Subspace.full(F5, 4)
    assert strength(c) == 4


def test_vandermonde_errors():
    with pytest.raises(NotEnoughPointsError):
        vandermonde_mds(F2, 3, 2)
    with pytest.raises(DuplicatePointsError):
        vandermonde_mds(F5, 3, 2, points=[1, 1, 2])
    with pytest.raises(NotEnoughPointsError):
        vandermonde_mds(F5, 3, 2, points=[1, 2])


@pytest.mark.parametrize("q", [5, 7, 8, 9])
def test_vandermonde_strength_grid(q):
    ctx = field_of_order(q)
    for n in range(2, min(q, 6) + 1):
        for k in range(1, n + 1):
            assert strength(vandermonde_mds(ctx, n, k)) == k


# -- coloring ----------------------------------------------------------------------

def coloring_instance(d=2):
    """x, y in the strength-2 class over GF(5) at distance d, plus a
    hyperplane of x through x∩y."""
    x = vandermonde_mds(F5, 4, 2)
    if d == 2:
        y = opposite_code(x, 2).code
    else:
        y = step_toward(x, opposite_code(x, 2).code, 2).z_code
    xy = intersect(x.space, y.space)
    h = next(hyperplanes_containing(x.space, xy))
    return x, y, xy, h


def test_psi_color_coset_and_scaling_invariance():
    x, y, xy, h = coloring_instance()
    hy = intersect(h, y.space)
    comp = complement_basis(xy, y.space)
    p = comp[0]
    base = psi_color(h, x, y, p, 2)
    ctx = F5
    for hvec in hy.vectors():
        shifted = tuple(ctx.add(a, b) for a, b in zip(p, hvec))
        assert psi_color(h, x, y, shifted, 2) == base
    for s in range(2, 5):
        scaled = tuple(ctx.mul(s, a) for a in p)
        assert psi_color(h, x, y, scaled, 2) == base


def test_psi_color_infinite_when_span_in_class():
    """A successful step span has no qualifying color."""
    x, y, xy, h = coloring_instance()
    cert = step_toward(x, y, 2)
    if cert.hyperplane_used == h:
        assert psi_color(h, x, y, cert.coset_rep, 2) is INFINITY_COLOR


def test_psi_color_degenerate_span_names_zero_column():
    """t=1, k=2: a qualifying coordinate is exactly a vanishing generator
    column of the span, and psi picks the smallest one."""
    idx = enumerate_subspaces(F3, 4, 2)
    marks = idx.strength_all()
    codes = [idx.code_at(i) for i in range(len(idx)) if marks[i] >= 1]
    checked = 0
    for x in codes[:25]:
        for y in codes:
            if x == y:
                continue
            xy = intersect(x.space, y.space)
            for h in hyperplanes_containing(x.space, xy):
                p = complement_basis(xy, y.space)[0]
                color = psi_color(h, x, y, p, 1)
                span = Subspace.from_vectors(F3, 4, list(h.basis.rows) + [p])
                zero_cols = [
                    j + 1
                    for j in range(4)
                    if all(r[j] == 0 for r in span.basis.rows)
                ]
                if color is INFINITY_COLOR:
                    assert zero_cols == []
                else:
                    assert color == (min(zero_cols),)
                    checked += 1
            if checked > 30:
                return
    assert checked > 0


def test_psi_color_errors():
    x, y, xy, h = coloring_instance()
    not_hyp = Subspace.from_vectors(F5, 4, [(0, 0, 1, 0)])
    with pytest.raises(BadHyperplaneError):
        psi_color(not_hyp, x, y, complement_basis(xy, y.space)[0], 2)
    degenerate = LinearCode.from_generator(F5, [(1, 0, 0, 0), (0, 1, 0, 0)])
    with pytest.raises(NotInCtError):
        psi_color(h, degenerate, y, complement_basis(xy, y.space)[0], 2)
    # a representative inside h needs an adjacent pair, where x∩y ⊆ h∩y
    xa, ya, xya, ha = coloring_instance(d=1)
    assert xya.dim == 1
    with pytest.raises(RepInHyperplaneError):
        psi_color(ha, xa, ya, xya.basis.rows[0], 2)


def test_monochromatic_basis():
    x, y, xy, h = coloring_instance()
    comp = complement_basis(xy, y.space)
    c0 = psi_color(h, x, y, comp[0], 2)
    if c0 is not INFINITY_COLOR:
        assert is_monochromatic_basis(h, x, y, [comp[0]], 2)
    with pytest.raises(DependentVectorsError):
        is_monochromatic_basis(h, x, y, [comp[0], comp[0]], 2)


def brute_force_subspace_color(h, x, y, lifted_basis, t):
    """Oracle: enumerate every projective basis pair of the quotient plane."""
    ctx = y.ctx
    points = []
    for lam in projective_reps(ctx, len(lifted_basis)):
        v = [0] * y.n
        for li, b in zip(lam, lifted_basis):
            if li:
                v = [ctx.add(a, ctx.mul(li, c)) for a, c in zip(v, b)]
        points.append(tuple(v))
    hy = intersect(h, y.space)
    best = None
    for combo in itertools.combinations(points, len(lifted_basis)):
        span = Subspace.from_vectors(ctx, y.n, list(hy.basis.rows) + list(combo))
        if span.dim != hy.dim + len(lifted_basis):
            continue
        colors = {color_sort_key(psi_color(h, x, y, v, t)) for v in combo}
        if len(colors) == 1 and colors != {color_sort_key(INFINITY_COLOR)}:
            color = next(iter(colors))[1]
            if best is None or color < best:
                best = color
    return NOT_COLORABLE if best is None else tuple(best)


def test_subspace_color_matches_brute_force():
    checked = 0
    for q, n in ((3, 4), (5, 4)):
        ctx = field_of_order(q)
        idx = enumerate_subspaces(ctx, n, 2)
        marks = idx.strength_all()
        codes = [idx.code_at(i) for i in range(len(idx)) if marks[i] >= 1]
        for x in codes[:6]:
            for y in codes[:12]:
                if x == y or intersect(x.space, y.space).dim != 0:
                    continue
                xy = intersect(x.space, y.space)
                h = next(hyperplanes_containing(x.space, xy))
                basis = complement_basis(xy, y.space)
                got = subspace_color(h, x, y, basis, 1)
                want = brute_force_subspace_color(h, x, y, basis, 1)
                assert got == want or (got is NOT_COLORABLE and want is NOT_COLORABLE)
                checked += 1
                if checked >= 8:
                    break
            if checked >= 8:
                break
    assert checked >= 4


# -- steps -------------------------------------------------------------------------

def test_step_d1_reaches_target():
    """At distance 1 the only valid step is y itself."""
    codes = strength_class(F3, 3, 2, 1)
    found = 0
    for x in codes:
        for y in codes:
            if x != y and intersect(x.space, y.space).dim == 1:
                cert = step_toward(x, y, 1)
                assert cert.z_code == y
                assert cert.dim_x_meet_z == 1 and cert.dim_z_meet_y == 2
                assert verify_step_certificate(x, y, 1, cert)
                found += 1
        if found > 6:
            break
    assert found


def test_step_vandermonde_disjoint_pair():
    """Frozen outcome: the scan succeeds here even though q=5 sits below
    the color-count bound for (n,t) = (4,2)."""
    x = vandermonde_mds(F5, 4, 2)
    y = opposite_code(x, 2).code
    assert intersect(x.space, y.space).dim == 0
    cert = step_toward(x, y, 2)
    assert (cert.dim_x_meet_z, cert.dim_z_meet_y) == (1, 1)
    assert cert.class_member and strength(cert.z_code) >= 2
    assert verify_step_certificate(x, y, 2, cert)


def test_step_certificate_tamper_detected():
    x = vandermonde_mds(F5, 4, 2)
    y = opposite_code(x, 2).code
    cert = step_toward(x, y, 2)
    bad = StepCertificate(
        cert.z_code, cert.hyperplane_used, cert.coset_rep,
        cert.dim_x_meet_z + 1, cert.dim_z_meet_y, cert.class_member,
    )
    assert not verify_step_certificate(x, y, 2, bad)


def test_step_preconditions():
    x = vandermonde_mds(F5, 4, 2)
    with pytest.raises(StepDepthError):
        step_toward(x, x, 2)
    y = opposite_code(x, 2).code  # distance 2
    with pytest.raises(StepDepthError):
        step_toward(x, y, 1)
    degenerate = LinearCode.from_generator(F5, [(1, 0, 0, 0), (0, 1, 0, 0)])
    with pytest.raises(NotInCtError):
        step_toward(degenerate, y, 1)


def test_step_first_hyperplane_above_bound():
    """q >= number of colors: the first hyperplane must already succeed."""
    codes = strength_class(F7, 4, 2, 2)  # 7 >= C(4,2) = 6
    rng_pairs = 0
    for x in codes[:4]:
        for y in codes[:40]:
            if x == y:
                continue
            d = 2 - intersect(x.space, y.space).dim
            if not 1 <= d <= 2:
                continue
            cert = step_toward(x, y, 2)
            first_h = next(hyperplanes_containing(x.space, intersect(x.space, y.space)))
            assert cert.hyperplane_used == first_h
            assert verify_step_certificate(x, y, 2, cert)
            rng_pairs += 1
            if rng_pairs >= 25:
                return
    assert rng_pairs


def test_count_step_codes_bound_and_oracle():
    idx = enumerate_subspaces(F7, 4, 2)
    marks = idx.strength_all()
    codes = [idx.code_at(i) for i in range(len(idx)) if marks[i] >= 2]
    x = codes[0]
    done = 0
    for y in codes[1:]:
        d = 2 - intersect(x.space, y.space).dim
        if d != 2:
            continue
        count = count_step_codes(x, y, 2)
        assert count >= q_int(2, 7)  # at least [d]_q distinct steps
        oracle = 0
        for i in range(len(idx)):
            if marks[i] < 2:
                continue
            z = idx.subspace_at(i)
            if (
                grassmann_distance(x.space, z) == 1
                and grassmann_distance(z, y.space) == d - 1
            ):
                oracle += 1
        assert count == oracle
        done += 1
        if done >= 2:
            break
    assert done == 2


def test_scan_stats_counted():
    scan_stats.reset()
    x = vandermonde_mds(F5, 4, 2)
    y = opposite_code(x, 2).code
    step_toward(x, y, 2)
    assert scan_stats.meet_checks > 0
    assert scan_stats.meet_violations == 0


# -- shrink ------------------------------------------------------------------------

def test_shrink_vandermonde():
    x = vandermonde_mds(F5, 4, 3)
    out = shrink(x, Subspace.zero(F5, 4), 1)
    assert out.k == 2
    assert x.space.contains(out.space)
    for crit in ("dual_distance", "columns", "coord_meet"):
        assert has_strength(out, 1, crit)


def test_shrink_preserves_inner():
    x = vandermonde_mds(F7, 5, 4)
    inner = Subspace.from_vectors(F7, 5, [x.generator.rows[0]])
    out = shrink(x, inner, 2)  # dim inner = 1 < k - t = 2
    assert out.k == 3
    assert out.space.contains(inner)
    assert strength(out) >= 2


def test_shrink_bad_inner():
    x = vandermonde_mds(F5, 4, 3)
    big = Subspace.from_vectors(F5, 4, x.generator.rows[:2])
    with pytest.raises(BadInnerSubspaceError):
        shrink(x, big, 1)  # dim 2 >= k - t = 2
    outside = Subspace.from_vectors(F5, 4, [(0, 0, 0, 1)])
    if not x.space.contains(outside):
        with pytest.raises(BadInnerSubspaceError):
            shrink(x, outside, 1)


def test_shrink_matches_existence_oracle_below_bound():
    """shrink succeeds exactly when some strength-t hyperplane exists
    (deterministic witness set: q=2, n=5, k=2, t=1, where 25 of the 40
    non-degenerate planes have no such hyperplane)."""
    codes = strength_class(F2, 5, 2, 1)
    assert len(codes) == 40
    zero = Subspace.zero(F2, 5)
    ok = fail = 0
    for x in codes:
        exists = any(
            strength(LinearCode(h)) >= 1
            for h in hyperplanes_containing(x.space, zero)
        )
        try:
            out = shrink(x, zero, 1)
            assert exists and strength(out) >= 1
            ok += 1
        except NoShrinkFoundError:
            assert not exists
            fail += 1
    assert (ok, fail) == (15, 25)


# -- geodesic paths -------------------------------------------------------------------

def path_is_valid(path, t):
    for a, b in zip(path, path[1:]):
        if intersect(a.space, b.space).dim != a.k - 1:
            return False
    return all(strength(z) >= t for z in path)


def test_geodesic_trivial_and_adjacent():
    x = vandermonde_mds(F5, 4, 2)
    assert geodesic_path(x, x, 2) == [x]
    y = step_toward(x, opposite_code(x, 2).code, 2).z_code
    mid = intersect(x.space, y.space).dim
    if mid == 1:
        assert geodesic_path(x, y, 2) == [x, y]


def test_geodesic_disjoint_pair_gf5():
    x = vandermonde_mds(F5, 4, 2)
    y = opposite_code(x, 1).code
    assert intersect(x.space, y.space).dim == 0
    path = geodesic_path(x, y, 1)
    assert len(path) == 3 and path[0] == x and path[-1] == y
    assert path_is_valid(path, 1)


def test_geodesic_deep_case():
    """d = 3 > t = 1 forces the shrink-and-merge branch twice."""
    x = vandermonde_mds(F7, 6, 3)
    y = opposite_code(x, 1).code
    assert intersect(x.space, y.space).dim == 0
    path = geodesic_path(x, y, 1)
    assert len(path) == 4
    assert path_is_valid(path, 1)
    assert path[0] == x and path[-1] == y


def test_geodesic_matches_distance_when_it_succeeds():
    codes = strength_class(F3, 4, 2, 1)
    done = 0
    for x in codes[::7]:
        for y in codes[::5]:
            d = 2 - intersect(x.space, y.space).dim
            if d == 0:
                continue
            try:
                path = geodesic_path(x, y, 1)
            except PathFailedError as exc:
                assert isinstance(exc.partial_path, list)
                continue
            assert len(path) - 1 == d
            assert path_is_valid(path, 1)
            done += 1
    assert done > 10


def test_geodesic_below_bound_failure_witness():
    """Frozen witness: over GF(2) with n=5, k=2, t=1 the deterministic
    shrink inside the deep branch fails for most disjoint pairs."""
    codes = strength_class(F2, 5, 2, 1)
    x, y = codes[2], codes[3]
    assert intersect(x.space, y.space).dim == 0
    with pytest.raises(PathFailedError) as exc_info:
        geodesic_path(x, y, 1)
    assert exc_info.value.partial_path == [x]


# -- opposite codes ---------------------------------------------------------------------

def test_opposite_disjoint_case():
    c = vandermonde_mds(F5, 4, 2)
    res = opposite_code(c, 2)
    assert intersect(c.space, res.code.space).dim == 0
    assert strength(res.code) == strength(c)
    assert apply_monomial(res.witness, c) == res.code
    assert 1 <= res.lam < 5


def test_opposite_overlapping_case():
    c = vandermonde_mds(F7, 3, 2)  # 2k > n
    res = opposite_code(c, 1)
    meet = intersect(c.space, res.code.space)
    assert meet.dim == 1 == max(2 * c.k - c.n, 0)
    s = c.space.dim + res.code.space.dim - meet.dim
    assert s == 3  # c + d spans everything


def test_opposite_construction_chain():
    c = vandermonde_mds(F7, 5, 2)
    res = opposite_code(c, 2)
    sigma = res.info_set_map
    assert apply_monomial(sigma, c) == res.permuted_code
    mu = sigma.compose(res.witness).compose(sigma.inverse())
    assert apply_monomial(mu, res.permuted_code) == res.scaled_code
    assert apply_monomial(sigma.inverse(), res.scaled_code) == res.code


def test_opposite_full_space():
    full = LinearCode(Subspace.full(F5, 3))
    res = opposite_code(full, 1)
    assert res.code == full
    assert intersect(full.space, res.code.space).dim == 3 == max(2 * 3 - 3, 0)


def test_opposite_errors():
    degenerate = LinearCode.from_generator(F5, [(1, 0, 0), (0, 1, 0)])
    with pytest.raises(NotInCtError):
        opposite_code(degenerate, 1)
    tiny = LinearCode.from_generator(F2, [(1, 1)])
    with pytest.raises(NoLambdaError):
        opposite_code(tiny, 1)


def test_opposite_realizes_diameter_distance():
    """Opposite pairs sit at distance min(k, n-k), the graph diameter."""
    for q, n, k in [(5, 4, 2), (7, 5, 2), (7, 5, 3), (8, 4, 3), (9, 5, 4)]:
        ctx = field_of_order(q)
        c = vandermonde_mds(ctx, n, k)
        res = opposite_code(c, 1)
        assert grassmann_distance(c.space, res.code.space) == min(k, n - k)
