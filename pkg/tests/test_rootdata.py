import itertools

import pytest

from affgrass.errors import InconsistentFamily
from affgrass.rootdata import (CHAMBERS, GTFamily, IDENT, S1, W0,
                               contains, eq_up_to_translation,
                               family_from_support, iota_family, lattice_points,
                               pairing, translate, weyl_act, weyl_family)
from affgrass.mvcomb import LusztigDatum, MVPolytope


def P(n, base=None):
    return MVPolytope.from_datum(LusztigDatum("121", n), base=base).family


def test_pairing():
    assert pairing((1, 0, 0), {1}) == 1
    assert pairing((2, 1, -1), {1, 2}) == 3
    assert all(pairing((0, 0, 0), S) == 0 for S in CHAMBERS)


def test_two_triangle_vertex_set():
    fam = P((2, 1, 1), base=(-1, 1, 1))
    assert set(fam.vertices) == {(0, 2, -1), (2, 0, -1), (-1, 2, 0),
                                 (2, -1, 0), (-1, 1, 1), (1, -1, 1)}
    # reconstruct from its own support numbers
    assert family_from_support(fam.support, fam.nu) == fam


def test_zero_family():
    fam = family_from_support([0] * 6, 0)
    assert set(fam.vertices) == {(0, 0, 0)}


def test_infeasible_support_rejected():
    W = weyl_family((1, 0, 0))
    M = list(W.support)
    M[3] -= 1  # dent the {1,2} half-space below feasibility
    with pytest.raises(InconsistentFamily):
        family_from_support(M, W.nu)
    # brute-force oracle: no positive orthogonal family over a small box
    # attains exactly these support numbers
    box = [v for v in itertools.product(range(-1, 3), repeat=3) if sum(v) == W.nu]
    found = False
    for verts in itertools.product(box, repeat=6):
        try:
            fam = GTFamily(W.nu, verts)
        except InconsistentFamily:
            continue
        if list(fam.support) == M:
            found = True
            break
    assert not found


def test_contains():
    f = P((1, 0, 0))
    assert contains(f, f)
    big = P((2, 0, 0), base=f.vertex(3))
    assert contains(big, f) and not contains(f, big)
    with pytest.raises(ValueError):
        contains(f, weyl_family((1, 0, 0)))


def test_contains_partial_order():
    pool = [P((1, 0, 0)), P((1, 0, 1)), P((1, 1, 1)), P((2, 1, 1))]
    base = pool[0].vertex(3)
    pool = [translate(f, tuple(b - a for a, b in zip(f.vertex(3), base)))
            for f in pool]
    for f in pool:
        assert contains(f, f)
    for f, g in itertools.product(pool, repeat=2):
        if contains(f, g) and contains(g, f):
            assert f.support == g.support
    for f, g, h in itertools.product(pool, repeat=3):
        if contains(f, g) and contains(g, h):
            assert contains(f, h)


def test_lattice_points_examples():
    fam = P((1, 0, 0), base=(0, 1, 0))  # the two-triangle anchoring
    assert lattice_points(fam) == [(0, 1, 0), (1, 0, 0)]
    assert lattice_points(family_from_support([0] * 6, 0)) == [(0, 0, 0)]
    W = weyl_family((1, 0, 0))
    assert set(lattice_points(W)) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_lattice_points_against_plain_enumeration():
    fam = P((2, 1, 1))
    M = fam.support
    brute = []
    for v in itertools.product(range(-6, 7), repeat=3):
        if sum(v) != fam.nu:
            continue
        if all(pairing(v, S) <= M[ci] for ci, S in enumerate(CHAMBERS)):
            brute.append(v)
    assert sorted(brute) == lattice_points(fam)
    for b in range(6):
        assert fam.vertex(b) in brute


def test_weyl_act_and_translate():
    fam = P((2, 1, 1), base=(-1, 1, 1))
    assert weyl_act(IDENT, fam) == fam
    flipped = weyl_act(W0, fam)
    assert sorted(flipped.vertices) == sorted(tuple(reversed(v))
                                              for v in fam.vertices)
    assert translate(translate(fam, (1, -2, 0)), (-1, 2, 0)) == fam


def test_weyl_act_composes_on_supports():
    fam = P((2, 1, 0))
    g = weyl_act(S1, fam)
    assert sorted(g.vertices) == sorted(tuple((v[1], v[0], v[2]))
                                        for v in fam.vertices)


def test_adjacent_gap_positivity_enforced():
    with pytest.raises(InconsistentFamily):
        GTFamily(0, tuple([(1, -1, 0), (0, 0, 0), (0, 0, 0),
                           (0, 0, 0), (0, 0, 0), (0, 0, 0)]))


def test_iota_vs_datum_reversal():
    # transpose-inverse reverses each edge path, so it reverses the 212-datum
    # read as a 121-datum: datum121(iota P(n)) = braid(reverse(n))
    from affgrass.mvcomb import braid, datum121_of, datum212_of, LusztigDatum
    for n in ((2, 1, 0), (1, 1, 1), (2, 1, 1), (0, 2, 1)):
        flipped = iota_family(P(n))
        rev = braid(LusztigDatum("121", tuple(reversed(n))))
        assert datum121_of(flipped).n == rev.n
        assert datum212_of(flipped).n == tuple(reversed(n))
        assert eq_up_to_translation(flipped, P(rev.n))
