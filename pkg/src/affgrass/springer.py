"""Affine Springer fibers for regular diagonal elements of gl(3, O).

Membership, dimension, the fundamental-domain truncation, the affine-cell
criterion with explicit per-chamber orbit counts, its brute-force oracle, and
the pavings of the crystal-truncated fibers with the boundary vertex orders.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import (NormalPositionRequired, PatternMismatch,
                     PavingVerificationFailed)
from .grass import GrassPoint, mat_inv, mat_mul
from .laurent import LaurentSeries, PrimeField, random_with_val, val, zero
from .mvcomb import (LusztigDatum, MVPolytope, apply_crystal_word, braid,
                     datum121_of, datum212_of, is_alternating, ZERO)
from .paving import (PavingPlan, _pave, _verify_steps, contracting_cell,
                     greedy_paving, is_normal_position)
from .rootdata import (BORELS, CHAMBERS, W0, Coweight, GTFamily, Perm, pairing,
                       perm_inv, perm_mul)

Pattern = Tuple[int, int, int]  # (c12, c23, c13)


def ultrametric(c: Pattern) -> bool:
    """The three pairwise valuations must attain their minimum at least twice."""
    m = min(c)
    return all(x >= 0 for x in c) and sum(1 for x in c if x == m) >= 2


def pattern_realizable(c: Pattern, p: int) -> bool:
    """Over F_2 the minimum cannot be attained three times (units are 1)."""
    if not ultrametric(c):
        return False
    m = min(c)
    if sum(1 for x in c if x == m) == 3 and p == 2:
        return False
    return True


@dataclass(frozen=True)
class RegularDiagonal:
    """A regular gamma in t(O) with its root-valuation triple."""

    gamma: Tuple[LaurentSeries, LaurentSeries, LaurentSeries]
    c: Pattern

    @classmethod
    def from_series(cls, gamma: Sequence[LaurentSeries]) -> "RegularDiagonal":
        g1, g2, g3 = gamma
        c = (val(g1 - g2), val(g2 - g3), val(g1 - g3))
        if any(isinstance(x, float) for x in c):
            raise PatternMismatch("gamma is not regular: two eigenvalues coincide")
        if any(x < 0 for x in c):
            raise PatternMismatch(f"gamma has root valuations {c}, not all >= 0")
        c = tuple(int(x) for x in c)
        if not ultrametric(c):
            raise PatternMismatch(f"root valuations {c} break the ultrametric inequality")
        return cls(tuple(gamma), c)

    @property
    def field(self) -> PrimeField:
        return self.gamma[0].field


def synthesize_gamma(c: Pattern, field: PrimeField, rng: random.Random) -> RegularDiagonal:
    """A random exact gamma in t(O) with the prescribed root valuations."""
    if not pattern_realizable(c, field.p):
        raise PatternMismatch(f"valuation pattern {c} has no diagonal over F_{field.p}")
    c12, c23, c13 = c
    a = random_with_val(field, c12, rng, exact=True)
    if c12 != c23:
        b = random_with_val(field, c23, rng, exact=True)
        # val(a+b) = min automatically; it must equal c13
        assert min(c12, c23) == c13
    elif c13 > c12:
        b = (-a) + random_with_val(field, c13, rng, exact=True)
    else:
        while True:
            b = random_with_val(field, c23, rng, exact=True)
            if (a + b).nonzero and (a + b).lead == c13:
                break
    g = (a, zero(field), -b)
    out = RegularDiagonal.from_series(g)
    assert out.c == tuple(c)
    return out


def springer_dim(gamma: RegularDiagonal) -> int:
    """Half the valuation of det(ad gamma) on gl3/t: the sum of root valuations."""
    return sum(gamma.c)


def member_springer(x: GrassPoint, gamma: RegularDiagonal) -> bool:
    """Ad(g)^-1 gamma integral, tested on the canonical representative."""
    d1, d2, d3 = x.d
    a = x.h[1][0].shift(-d1)
    c = x.h[2][0].shift(-d1)
    b = x.h[2][1].shift(-d2)
    g1, g2, g3 = gamma.gamma
    # for h = L eps^d lower unipotent, L^-1 gamma L has the three lower entries
    t21 = a * (g2 - g1)
    t32 = b * (g3 - g2)
    t31 = (a * b) * (g1 - g2) - c * (g1 - g3)
    return (t21.effval() >= d2 - d1 and t32.effval() >= d3 - d2
            and t31.effval() >= d3 - d1)


def member_springer_matrix(g, gamma: RegularDiagonal) -> bool:
    """Generic membership test for an arbitrary representative."""
    field = gamma.field
    z = zero(field)
    gm = ((gamma.gamma[0], z, z), (z, gamma.gamma[1], z), (z, z, gamma.gamma[2]))
    conj = mat_mul(mat_mul(mat_inv(g), gm), g)
    return all(conj[i][j].effval() >= 0 for i in range(3) for j in range(3))


@dataclass(frozen=True)
class SpringerTruncation:
    polytope: GTFamily
    gamma: RegularDiagonal


def fundamental_domain(gamma: RegularDiagonal) -> SpringerTruncation:
    """The truncation by P^(121)(n1, n2, n2) for the pattern c12=n1, c23=c13=n2."""
    c12, c23, c13 = gamma.c
    if c23 != c13 or c12 < c23:
        raise PatternMismatch(
            f"root valuations {gamma.c} are not of the shape (n1, n2, n2), n1 >= n2")
    fam = MVPolytope.from_datum(LusztigDatum("121", (c12, c23, c23))).family
    return SpringerTruncation(fam, gamma)


# ---------------------------------------------------------------------------
# the affine-cell criterion
# ---------------------------------------------------------------------------

def criterion_l_values(n: Tuple[int, int, int], b: int, c: Pattern):
    """Orbit counts (l12, l23, l13) in the chamber-b contracting cell."""
    n1, n2, n3 = n
    c12, c23, c13 = c
    table = {
        0: (min(n1, c12), min(n2, c23), min(n2 + n3, c13)),
        5: (min(n1, c12), min(n2 + n3, c23), min(n2, c13)),
        1: (min(n1 + n2, c12), min(n2, c23), min(n3, c13)),
        2: (min(n1 + n2 - n3, c12), min(n2 + n3, c23), min(n3, c13)),
        3: (min(n1 + n2 - n3, c12), min(n3, c23), min(n2 + n3, c13)),
        4: (min(n1 + n2, c12), min(n3, c23), min(n2, c13)),
    }
    return table[b]


def criterion_bound(n: Tuple[int, int, int], b: int, c: Pattern) -> int:
    n1, n2, n3 = n
    c12, c23, c13 = c
    if b in (0, 5, 2, 3):
        return n2 + n3 + c12
    if b == 1:
        return n1 + n2 + c23
    return n1 + n2 + c13


def criterion(P: MVPolytope, b: int, gamma: RegularDiagonal) -> bool:
    """Whether the Springer slice of the chamber-b contracting cell is affine."""
    if not is_normal_position(P.datum121):
        raise NormalPositionRequired(f"datum {P.datum121.n} needs n1 >= n3 >= n2")
    n = P.datum121.n
    ls = criterion_l_values(n, b, gamma.c)
    return sum(ls) <= criterion_bound(n, b, gamma.c)


def criterion_raw_case1(n: Tuple[int, int, int], c: Pattern) -> bool:
    """The congruence-analysis form of the chamber-0 condition."""
    n1, n2, n3 = n
    c12, c23, c13 = c
    return (max(0, n1 - c12) + max(0, n2 - c23) + c12
            >= min(n1 + n2, n1 - n3 + c13))


def criterion_oracle(P: MVPolytope, b: int, gamma: RegularDiagonal, q: int) -> bool:
    """Brute force: count F_q-points of the cell-with-Springer-condition."""
    field = PrimeField(q, 64)
    if gamma.field.p != q:
        raise ValueError("oracle field must match gamma's field")
    cell = contracting_cell(P, b)
    n = P.datum121.n
    ls = criterion_l_values(n, b, gamma.c)
    count = sum(1 for x in cell.enumerate(field) if member_springer(x, gamma))
    return count == q ** sum(ls)


# ---------------------------------------------------------------------------
# cells of arbitrary generalized MV polytopes, with gamma transported
# ---------------------------------------------------------------------------

def _normalize_gmv(f: GTFamily):
    """Present f as iota^delta (w . h) with h a normal-position MV family."""
    from .rootdata import iota_family
    for delta in (0, 1):
        g0 = iota_family(f) if delta else f
        for w in BORELS:
            h = g0.weyl(perm_inv(w))
            d = datum121_of(h)
            if braid(d) != datum212_of(h):
                continue
            if d.n[0] >= d.n[2] >= d.n[1]:
                return delta, w, h
    raise NormalPositionRequired(f"{f.vertices} has no normal-position presentation")


def springer_cell_data(f: GTFamily, b: int, gamma: RegularDiagonal):
    """(dimension, affine?) for the Springer slice of C_b of a generalized MV family."""
    delta, w, h = _normalize_gmv(f)
    bb = b
    if delta:
        bb = BORELS.index(perm_mul(BORELS[bb], W0))
    bb = BORELS.index(perm_mul(perm_inv(w), BORELS[bb]))
    cw = _transport_pattern(gamma.c, w)
    n = datum121_of(h).n
    ls = criterion_l_values(n, bb, cw)
    return sum(ls), sum(ls) <= criterion_bound(n, bb, cw)


def _transport_pattern(c: Pattern, w: Perm) -> Pattern:
    """Root valuations of Ad(w)^-1 gamma: c'_{ij} = c_{w(i) w(j)}."""
    by_pair = {(1, 2): c[0], (2, 3): c[1], (1, 3): c[2]}
    out = []
    for (i, j) in ((1, 2), (2, 3), (1, 3)):
        a, b = sorted((w[i - 1], w[j - 1]))
        out.append(by_pair[(a, b)])
    return tuple(out)


# ---------------------------------------------------------------------------
# truncated pavings (boundary orders of the two figures)
# ---------------------------------------------------------------------------

def _cap_order(big: GTFamily, small: GTFamily) -> List[Coweight]:
    """Order on the fixed points stripped between two nested truncations.

    One receding facet: its lattice points from both ends inward, the w0-side
    corner first.  Two receding facets: their common corner first, then pairs
    walking each facet from the far end and the corner end alternately.
    """
    Mb, Ms = big.support, small.support
    moved = [ci for ci in range(6) if Ms[ci] < Mb[ci]]
    if not all(s <= b for s, b in zip(Ms, Mb)):
        raise PavingVerificationFailed("truncation chain is not nested")
    cap = [v for v in big.lattice_points() if not small.contains_point(v)]
    if not moved or len(moved) > 2:
        raise PavingVerificationFailed(
            f"{len(moved)} facets recede in one crystal step; expected 1 or 2")
    on_facet = {ci: sorted(v for v in cap if pairing(v, CHAMBERS[ci]) == Mb[ci])
                for ci in moved}
    for v in cap:
        if not any(v in pts for pts in on_facet.values()):
            raise PavingVerificationFailed(f"stripped vertex {v} lies on no receding facet")
    if len(moved) == 1:
        pts = on_facet[moved[0]]
        return _ends_inward(pts, big)
    ca, cb = moved
    corner = [v for v in cap if pairing(v, CHAMBERS[ca]) == Mb[ca]
              and pairing(v, CHAMBERS[cb]) == Mb[cb]]
    if len(corner) != 1:
        raise PavingVerificationFailed(f"receding facets share {len(corner)} cap corners")
    v0 = corner[0]
    seq_a = _from_far(sorted(set(on_facet[ca]) - {v0}), v0)
    seq_b = _from_far(sorted(set(on_facet[cb]) - {v0}), v0)
    out = [v0]
    for i in range(max(len(seq_a), len(seq_b))):
        if i < len(seq_a):
            out.append(seq_a[i])
        if i < len(seq_b):
            out.append(seq_b[i])
    return out


def _ends_inward(pts: List[Coweight], big: GTFamily) -> List[Coweight]:
    pts = sorted(pts)
    if not pts:
        return []
    # start from the w0-side end when the w0 vertex is one of the two ends
    if pts[-1] == big.vertex(3) and pts[0] != big.vertex(3):
        pts = pts[::-1]
    lo, hi = 0, len(pts) - 1
    out = []
    while lo <= hi:
        out.append(pts[lo])
        if hi != lo:
            out.append(pts[hi])
        lo += 1
        hi -= 1
    return out


def _from_far(pts: List[Coweight], corner: Coweight) -> List[Coweight]:
    """Alternate far end, near end, then inward."""
    pts = sorted(pts, key=lambda v: _lattice_dist(v, corner), reverse=True)
    far_first = []
    lo, hi = 0, len(pts) - 1
    while lo <= hi:
        far_first.append(pts[lo])
        if hi != lo:
            far_first.append(pts[hi])
        lo += 1
        hi -= 1
    return far_first


def _lattice_dist(u: Coweight, v: Coweight) -> int:
    return max(abs(a - b) for a, b in zip(u, v))


def _chain_words(j: Sequence[int], n2: int) -> List[Tuple[int, ...]]:
    """The word chain from j down to the alternating word of length 2*n2."""
    words = [tuple(j)]
    while len(words[-1]) < 2 * n2:
        w = words[-1]
        first = w[0] if w else 1
        words.append((3 - first,) + w)
    return words


def truncated_paving(gamma: RegularDiagonal, j: Sequence[int],
                     verify_qs: Optional[Sequence[int]] = None,
                     rng: Optional[random.Random] = None) -> PavingPlan:
    """Paving of the crystal-truncated Springer fiber, verified by point counts."""
    j = tuple(j)
    if not is_alternating(j):
        raise ValueError(f"{j} is not an alternating 1/2 sequence")
    trunc = fundamental_domain(gamma)
    n1, n2 = gamma.c[0], gamma.c[1]
    P0 = MVPolytope.from_family(trunc.polytope)
    if len(j) > 2 * n2:
        return PavingPlan("springer", trunc.polytope, (), {"per_q": [], "ok": True,
                                                           "empty": True})
    chain = _chain_words(j, n2)
    polys = []
    for w in chain:
        Q = apply_crystal_word(w, P0)
        assert Q is not ZERO
        polys.append(Q.family)
    forced: List[Coweight] = []
    for big, small in zip(polys, polys[1:]):
        forced.extend(_cap_order(big, small))

    def cell_fn(fam: GTFamily, b: int):
        return springer_cell_data(fam, b, gamma)

    steps = _pave(polys[0], cell_fn, forced=forced, springer_c=gamma.c)
    if verify_qs is None:
        verify_qs = tuple(q for q in (2, 3, 5) if pattern_realizable(gamma.c, q))[:2]
    verified = _verify_steps(steps, polys[0], verify_qs,
                             springer_pattern=gamma.c, rng=rng)
    return PavingPlan("springer", polys[0], tuple(steps), verified)
