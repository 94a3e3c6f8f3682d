import random

import pytest

from affgrass.errors import (BudgetExceeded, GaussFailure, PreconditionViolated,
                             PrecisionLoss, SingularMatrix)
from affgrass.grass import (D, Delta, borel_values, canonicalize_point,
                            curve_point, decompose_u0, dprofile, dprofile_matrix,
                            ec, enumerate_points, eta_w0, eta_w0_inv, gauss_plus,
                            mat, mat_det, mat_diag_eps, mat_identity, mat_inv,
                            mat_mul, mat_transpose, member, minor, point_from_y,
                            root_elem, sample_point, transition, translate_point,
                            upper_canonical, wbar0, x_mat, y_map)
from affgrass.laurent import LaurentSeries, PrimeField, eps, one, random_with_val, val, zero
from affgrass.mvcomb import LusztigDatum, MVPolytope
from affgrass.rootdata import BORELS, contains, pairing, weyl_family

F2 = PrimeField(2, 32)
F3 = PrimeField(3, 32)
FBIG = PrimeField(10007, 64)


def rand_matrix_in_K(field, rng):
    while True:
        m = tuple(tuple(LaurentSeries(field, 0,
                                      [rng.randrange(field.p) for _ in range(6)])
                        for _ in range(3)) for _ in range(3))
        det = mat_det(m)
        if det.nonzero and det.lead == 0:
            return m


def rand_invertible(field, rng, span=2):
    while True:
        m = tuple(tuple(LaurentSeries(field, rng.randrange(-span, span + 1),
                                      [rng.randrange(field.p) for _ in range(6)])
                        for _ in range(3)) for _ in range(3))
        try:
            det = mat_det(m)
        except Exception:
            continue
        if det.nonzero:
            return m


def test_canonical_diagonal_and_identity():
    x = canonicalize_point(mat_identity(F2))
    assert x.d == (0, 0, 0) and x.nu == 0
    y = canonicalize_point(mat_diag_eps(F2, (2, 0, -1)))
    assert y.d == (2, 0, -1) and y.nu == 1


def test_canonical_right_coset_invariance():
    rng = random.Random(11)
    for p in (2, 3):
        field = PrimeField(p, 32)
        for _ in range(8):
            g = rand_invertible(field, rng)
            x = canonicalize_point(g)
            for _ in range(4):
                k = rand_matrix_in_K(field, rng)
                assert canonicalize_point(mat_mul(g, k)) == x


def test_canonical_form_shape():
    rng = random.Random(12)
    g = rand_invertible(F3, rng)
    x = canonicalize_point(g)
    for r in range(3):
        for c in range(3):
            e = x.h[r][c]
            assert e.exact
            if r < c:
                assert e.is_exact_zero
            elif r == c:
                assert e == eps(F3, x.d[r])
            elif e.nonzero:
                assert e.lead + len(e.coeffs) - 1 < x.d[r]


def test_singular_matrix_rejected():
    z = zero(F2)
    o = one(F2)
    g = ((o, o, z), (o, o, z), (z, z, o))
    with pytest.raises(SingularMatrix):
        canonicalize_point(g)


def test_minor_and_delta():
    I = mat_identity(F3)
    assert Delta(I, {1}) == one(F3)
    assert Delta(I, {1, 2}) == one(F3)
    assert Delta(I, {2}).is_exact_zero
    g = mat_diag_eps(F3, (1, 2, 3))
    assert minor(g, (1, 2), (1, 2)) == eps(F3, 3)
    rng = random.Random(13)
    h = rand_invertible(F3, rng)
    assert Delta(h, {1}) == h[0][0]


def test_D_diagonal():
    x = canonicalize_point(mat_diag_eps(F3, (2, 0, -1)))
    for S in ({1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}):
        assert D(x, S) == -pairing((2, 0, -1), S)


def test_D_constant_on_semiinfinite_orbits():
    # D_{w.varpi_i}(u eps^nu K) = -<nu, w.varpi_i> for u in U_w(F)
    rng = random.Random(14)
    for b, w in enumerate(BORELS):
        for _ in range(3):
            nu = tuple(rng.randrange(-2, 3) for _ in range(3))
            # random element of U_w: conjugate a random upper unipotent by w
            uu = [list(r) for r in mat_identity(FBIG)]
            for (r, c) in ((0, 1), (0, 2), (1, 2)):
                uu[r][c] = random_with_val(FBIG, rng.randrange(-2, 3), rng)
            pm = tuple(tuple(one(FBIG) if r + 1 == w[c] else zero(FBIG)
                             for c in range(3)) for r in range(3))
            um = mat_mul(mat_mul(pm, mat(uu)), mat_inv(pm))
            g = mat_mul(um, mat_diag_eps(FBIG, nu))
            x = canonicalize_point(g)
            for level in (1, 2):
                S = frozenset(w[:level])
                assert D(x, S) == -pairing(nu, S)


def test_dprofile_closed_form_matches_minors():
    rng = random.Random(15)
    for _ in range(10):
        g = rand_invertible(F3, rng)
        x = canonicalize_point(g)
        assert dprofile(x) == dprofile_matrix(x.h)


def test_ec_examples():
    x = canonicalize_point(mat_diag_eps(F3, (1, 0, -1)))
    fam = ec(x)
    assert set(fam.vertices) == {(1, 0, -1)}
    # an absorbed root-group factor leaves a fixed point
    g = mat_mul(root_elem(F3, (1, 2), eps(F3, 5)), mat_diag_eps(F3, (1, 0, -1)))
    assert ec(canonicalize_point(g)) == fam


def test_member_and_ec_containment():
    fam = MVPolytope.from_datum(LusztigDatum("121", (1, 0, 1))).family
    for v in fam.lattice_points():
        x = canonicalize_point(mat_diag_eps(F2, v))
        assert member(x, fam)
    big = weyl_family((2, 0, 0))
    small = fam.translate((1, 1, 0))
    assert small.nu == big.nu
    outside = [x for x in enumerate_points(big, F2) if not member(x, small)]
    assert outside
    for x in enumerate_points(big, F2):
        assert member(x, small) == contains(small, ec(x))


def test_gauss_plus():
    u = [list(r) for r in mat_identity(F3)]
    u[0][1] = eps(F3, 1)
    u[1][2] = one(F3)
    v, t, uu = gauss_plus(mat(u))
    assert v == mat_identity(F3) and t == mat_identity(F3) and uu == mat(u)
    dm = mat_diag_eps(F3, (1, 2, 3))
    v, t, uu = gauss_plus(dm)
    assert v == mat_identity(F3) and t == dm and uu == mat_identity(F3)
    bad = [list(r) for r in mat_identity(F3)]
    bad[0][0] = zero(F3)
    with pytest.raises(GaussFailure):
        gauss_plus(mat(bad))


def test_gauss_reconstructs():
    rng = random.Random(16)
    for _ in range(10):
        g = rand_invertible(FBIG, rng, span=1)
        try:
            v, t, u = gauss_plus(g)
        except GaussFailure:
            continue
        w = mat_mul(mat_mul(v, t), u)
        assert all(w[i][j].agrees(g[i][j]) for i in range(3) for j in range(3))


def test_eta_round_trip_and_unipotence():
    rng = random.Random(17)
    count = 0
    while count < 10:
        uu = [list(r) for r in mat_identity(FBIG)]
        for (r, c) in ((0, 1), (0, 2), (1, 2)):
            uu[r][c] = random_with_val(FBIG, rng.randrange(-2, 3), rng)
        y = mat(uu)
        try:
            x = eta_w0(y)
            back = eta_w0_inv(x)
        except GaussFailure:
            continue
        count += 1
        for i in range(3):
            assert x[i][i].coeffs[:1] == (1,) and val(x[i][i]) == 0
            for j in range(i):
                assert not x[i][j].nonzero
        assert all(back[i][j].agrees(y[i][j]) for i in range(3) for j in range(3))


def test_eta_domain_violation():
    with pytest.raises(GaussFailure):
        eta_w0_inv(mat_identity(F3))  # identity . wbar0 has vanishing corner minor


def test_y_map_transition_law():
    rng = random.Random(18)
    done = 0
    while done < 5:
        ts = [random_with_val(FBIG, rng.randrange(3), rng) for _ in range(3)]
        try:
            tp = transition("121", ts)
            y1 = y_map("121", ts)
            y2 = y_map("212", tp)
        except GaussFailure:
            continue
        done += 1
        assert all(y1[i][j].agrees(y2[i][j]) for i in range(3) for j in range(3))


def test_y_map_all_units_round_trip():
    ts = [one(FBIG)] * 3
    y = y_map("121", ts)
    assert val(y[0][1]) == 0
    x = eta_w0(y)
    assert all(x[i][j].agrees(x_mat("121", ts)[i][j]) for i in range(3) for j in range(3))


def test_decompose_u0_round_trip():
    rng = random.Random(19)
    for word in ("121", "212"):
        ts = [random_with_val(FBIG, n, rng) for n in (1, 0, 2)]
        x = point_from_y(word, ts)
        got = decompose_u0(x, word, rng)
        assert tuple(val(t) for t in got) == (1, 0, 2)
        assert point_from_y(word, got) == x


def test_decompose_u0_identity_coset():
    rng = random.Random(20)
    x = canonicalize_point(mat_identity(FBIG))
    ts = decompose_u0(x, "121", rng)
    assert point_from_y("121", ts) == x


def test_decompose_u0_precondition():
    rng = random.Random(21)
    x = canonicalize_point(mat_diag_eps(FBIG, (1, 0, -1)))
    with pytest.raises(PreconditionViolated):
        decompose_u0(x, "121", rng)


def test_enumerate_counts():
    P1 = MVPolytope.from_datum(LusztigDatum("121", (1, 0, 0))).family
    assert len(enumerate_points(P1, F2)) == 3
    W = weyl_family((1, 0, 0))
    assert len(enumerate_points(W, F2)) == 7
    assert len(enumerate_points(W, F3)) == 13
    single = MVPolytope.from_datum(LusztigDatum("121", (0, 0, 0))).family
    assert len(enumerate_points(single, F2)) == 1


def test_enumerate_monotone_and_stable():
    small = MVPolytope.from_datum(LusztigDatum("121", (1, 0, 0))).family
    big = MVPolytope.from_datum(LusztigDatum("121", (2, 0, 0)),
                                base=small.vertex(3)).family
    assert contains(big, small)
    assert len(enumerate_points(small, F2)) <= len(enumerate_points(big, F2))
    assert len(enumerate_points(big, F2, slack=1)) == len(enumerate_points(big, F2))


def test_enumerate_budget():
    W = weyl_family((3, -1, -1))
    with pytest.raises(BudgetExceeded):
        enumerate_points(W, F3, budget=10)


def test_delta_bounds_D_with_equality_somewhere():
    rng = random.Random(22)
    fam = MVPolytope.from_datum(LusztigDatum("121", (1, 0, 1))).family
    for x in enumerate_points(fam, F2)[:6]:
        prof = dprofile(x)
        for ci, S in enumerate(({1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3})):
            best = None
            for _ in range(40):
                k = rand_matrix_in_K(F2, rng)
                m = mat_inv(mat_mul(x.h, k))
                dd = Delta(m, S)
                if dd.nonzero:
                    assert dd.lead >= prof[ci]
                    best = prof[ci] if dd.lead == prof[ci] else best
            assert best is not None


def test_point_translation_and_equivariance():
    x = canonicalize_point(mat_diag_eps(F3, (1, 0, 0)))
    y = translate_point(x, (0, 1, -1))
    assert y.d == (1, 1, -1)
    fam = ec(x)
    assert ec(y) == fam.translate((0, 1, -1))


def test_sample_point_members():
    rng = random.Random(23)
    fam = weyl_family((2, 0, 0))
    for _ in range(20):
        x = sample_point(fam, F3, rng)
        assert member(x, fam)


def test_required_precision_guard():
    tiny = PrimeField(2, 4)
    with pytest.raises(PrecisionLoss):
        enumerate_points(weyl_family((1, 0, 0)), tiny)


def test_borel_values_are_ec_vertices():
    fam = MVPolytope.from_datum(LusztigDatum("121", (1, 0, 1))).family
    for x in enumerate_points(fam, F2):
        assert borel_values(x) == ec(x).vertices
