"""Affine pavings of truncated affine Grassmannians.

Two constructions: the Iwahori paving of a Schubert variety restricted to an
MV polytope in normal position, and the greedy scheme that repeatedly removes
a contracting cell at a minimum-weight vertex and re-covers the complement by
the maximal generalized MV polytopes avoiding it.  Every plan is verified by
finite-field point counts.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from .errors import (BudgetExceeded, InconsistentFamily, NormalPositionRequired,
                     NotMV, PavingVerificationFailed, ShapeMismatch)
from .grass import (GrassPoint, canonicalize_point, ec, enumerate_points, mat,
                    mat_diag_eps, mat_identity, mat_inv, mat_mul)
from .laurent import LaurentSeries, PrimeField
from .moment import MomentGraph, PoincarePoly, skeleton
from .mvcomb import (LusztigDatum, MVPolytope, braid, canonicalize, dimension,
                     vertices_of)
from .rootdata import (CHAMBERS, Coweight, GTFamily, contains,
                       family_from_support, pairing, sub_cw, weyl_family)

# ---------------------------------------------------------------------------
# contracting cells (explicit coordinates, normal position n1 >= n3 >= n2)
# ---------------------------------------------------------------------------

# (inverted, ((row, col, lower-bound as fn of n), ...)) per Borel chamber
_CELL_SHAPES = {
    0: (True, ((1, 2, lambda n: 0), (1, 3, lambda n: n[0] - n[2]), (2, 3, lambda n: 0))),
    1: (False, ((1, 2, lambda n: 0), (1, 3, lambda n: n[0] - n[2]), (3, 2, lambda n: 0))),
    2: (False, ((1, 2, lambda n: 0), (3, 1, lambda n: n[2] - n[0]), (3, 2, lambda n: 0))),
    3: (False, ((2, 1, lambda n: 0), (3, 1, lambda n: 0), (3, 2, lambda n: n[2] - n[0]))),
    4: (False, ((2, 1, lambda n: 0), (2, 3, lambda n: n[0] - n[2]), (3, 1, lambda n: 0))),
    5: (True, ((1, 3, lambda n: 0), (2, 1, lambda n: 0), (2, 3, lambda n: n[0] - n[2]))),
}


@dataclass(frozen=True)
class ContractingCell:
    """Explicit coordinates of C_B: unipotent entry windows over a diagonal."""

    polytope: MVPolytope
    borel: int
    dim: int
    diag: Coweight
    inverted: bool
    windows: Tuple[Tuple[int, int, int, int], ...]  # (row, col, lo, hi)

    def enumerate(self, field: PrimeField) -> Set[GrassPoint]:
        q = field.p
        ranges = [max(0, hi - lo) for (_r, _c, lo, hi) in self.windows]
        pts = set()
        for coeff_sets in itertools.product(
                *[itertools.product(range(q), repeat=k) for k in ranges]):
            u = [list(r) for r in mat_identity(field)]
            for (r, c, lo, _hi), cs in zip(self.windows, coeff_sets):
                u[r - 1][c - 1] = LaurentSeries(field, lo, cs)
            m = mat(u)
            if self.inverted:
                m = mat_inv(m)
            g = mat_mul(m, mat_diag_eps(field, self.diag))
            pts.add(canonicalize_point(g, field))
        return pts


def is_normal_position(d: LusztigDatum) -> bool:
    n = d.n if d.word == "121" else braid(d).n
    return n[0] >= n[2] >= n[1]


def contracting_cell(P: MVPolytope, b: int) -> ContractingCell:
    if not is_normal_position(P.datum121):
        raise NormalPositionRequired(f"datum {P.datum121.n} needs n1 >= n3 >= n2")
    n = P.datum121.n
    lam = P.family.vertex(b)
    # entry bounds are stated in the two-triangle anchoring; conjugate by
    # the translation taking that anchor to the actual one
    ref = schubert_anchored_family(LusztigDatum("121", n))
    chi = sub_cw(lam, ref.vertex(b))
    inverted, shape = _CELL_SHAPES[b]
    windows = []
    for (r, c, lo_fn) in shape:
        lo = lo_fn(n) + chi[r - 1] - chi[c - 1]
        hi = lam[r - 1] - lam[c - 1]
        windows.append((r, c, lo, hi))
    dim = sum(max(0, hi - lo) for (_r, _c, lo, hi) in windows)
    assert dim == n[0] + 2 * n[1] + n[2]
    return ContractingCell(P, b, dim, lam, inverted, tuple(windows))


# ---------------------------------------------------------------------------
# Iwahori cells (non-standard paving of Schubert varieties)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IwahoriCell:
    shift: Coweight          # the conjugation a with I_a = Ad(eps^a) I
    lam: Coweight            # Schubert highest coweight
    vertex: Coweight         # the torus fixed point eps^{lam'}
    thresholds: Tuple[Tuple[Optional[int], ...], ...]
    dim: int

    def enumerate(self, field: PrimeField) -> Set[GrassPoint]:
        q = field.p
        wins = []
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                lo = self.thresholds[i][j]
                hi = self.vertex[i] - self.vertex[j]
                wins.append((i, j, lo, max(0, hi - lo)))
        pts = set()
        for coeff_sets in itertools.product(
                *[itertools.product(range(q), repeat=k) for (_i, _j, _lo, k) in wins]):
            m = [list(r) for r in mat_identity(field)]
            for (i, j, lo, _k), cs in zip(wins, coeff_sets):
                m[i][j] = LaurentSeries(field, lo, cs)
            g = mat_mul(mat(m), mat_diag_eps(field, self.vertex))
            pts.add(canonicalize_point(g, field))
        return pts


def iwahori_cell(a: Coweight, lam: Coweight, lamp: Coweight) -> IwahoriCell:
    """The cell Sch(lam) cap I_a eps^{lamp} K/K of the non-standard paving."""
    if lam[0] >= lam[1] == lam[2]:
        def extra(i, j):
            return lam[2] - lamp[j]
    elif lam[0] == lam[1] >= lam[2]:
        def extra(i, j):
            return -lam[0] + lamp[i]
    else:
        raise ShapeMismatch(f"{lam} has neither shape (a,b,b) nor (a,a,b)")
    thresholds = [[None] * 3 for _ in range(3)]
    dim = 0
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            base = a[i] - a[j] + (1 if i > j else 0)
            m = max(base, extra(i, j))
            thresholds[i][j] = m
            dim += max(0, (lamp[i] - lamp[j]) - m)
    return IwahoriCell(a, lam, lamp, tuple(tuple(r) for r in thresholds), dim)


def mv_as_intersection(d: LusztigDatum):
    """The truncation as Sch(n1+n2,-n2,-n2) cap eps^shift . Sch(n3,n3,-n1-n2).

    Stated in the anchoring where the polytope is the intersection of its two
    bounding Schubert triangles.
    """
    if not is_normal_position(d):
        raise NormalPositionRequired(f"datum {d.n} needs n1 >= n3 >= n2")
    n = d.n if d.word == "121" else braid(d).n
    lam1 = (n[0] + n[1], -n[1], -n[1])
    shift = (n[0] - n[2], n[0] - n[2], 0)
    lam2 = (n[2], n[2], -n[0] - n[1])
    return lam1, shift, lam2


def schubert_anchored_family(d: LusztigDatum) -> GTFamily:
    """The MV polytope anchored inside its two bounding Schubert triangles."""
    n = d.n if d.word == "121" else braid(d).n
    return vertices_of(LusztigDatum("121", n), (-n[1], n[0] - n[2], n[2]))


# ---------------------------------------------------------------------------
# paving plans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PavingStep:
    vertex: Coweight
    borel: Optional[int]
    dim: int
    polytope: GTFamily


@dataclass(frozen=True)
class PavingPlan:
    method: str
    polytope: GTFamily
    steps: Tuple[PavingStep, ...]
    verified: Optional[dict]

    def poincare(self) -> PoincarePoly:
        return PoincarePoly.from_dims([s.dim for s in self.steps])

    def to_json(self):
        return {
            "method": self.method,
            "nu": self.polytope.nu,
            "steps": [{"vertex": list(s.vertex), "borel": s.borel, "dim": s.dim}
                      for s in self.steps],
            "poincare": list(self.poincare().coeffs),
            "verified": self.verified,
        }


def paving_121(d: LusztigDatum, verify_qs: Sequence[int] = (2, 3)) -> PavingPlan:
    """Paving of the MV truncation by Iwahori cells of its bounding Schubert
    variety, one cell per lattice point."""
    lam1, shift, _lam2 = mv_as_intersection(d)
    family = schubert_anchored_family(d)
    cells = [iwahori_cell(shift, lam1, lamp) for lamp in family.lattice_points()]
    cells.sort(key=lambda c: (-c.dim, c.vertex))
    steps = tuple(PavingStep(c.vertex, None, c.dim, family) for c in cells)
    record = {"per_q": [], "ok": True}
    for q in verify_qs:
        field = PrimeField(q, 64)
        pts = set(enumerate_points(family, field))
        seen: Set[GrassPoint] = set()
        by_cell = []
        for c in cells:
            cpts = c.enumerate(field)
            if len(cpts) != q ** c.dim:
                raise PavingVerificationFailed(
                    f"iwahori cell at {c.vertex} has {len(cpts)} points, wants {q}^{c.dim}")
            if cpts & seen:
                raise PavingVerificationFailed(f"iwahori cells overlap at {c.vertex}")
            seen |= cpts
            by_cell.append(len(cpts))
        if seen != pts:
            raise PavingVerificationFailed(
                f"iwahori cells cover {len(seen)} points, truncation has {len(pts)}")
        record["per_q"].append({"q": q, "total": len(pts), "by_step": by_cell})
    return PavingPlan("iwahori", family, steps, record)


# ---------------------------------------------------------------------------
# maximal generalized MV subpolytopes
# ---------------------------------------------------------------------------

def is_gmv(f: GTFamily) -> bool:
    try:
        canonicalize(f)
        return True
    except NotMV:
        return False


def gmv_dimension(f: GTFamily) -> int:
    _w, P = canonicalize(f)
    return dimension(P)


def max_gmv_inside(f: GTFamily, avoid: Optional[Coweight],
                   state_budget: int = 200_000) -> List[GTFamily]:
    """Maximal generalized MV polytopes inside f, not containing ``avoid``.

    Unit tightening walk on support vectors: decrement one support number at a
    time, keep the valid generalized MV families that exclude the forbidden
    vertex, stop descending below found candidates.
    """
    pts = f.lattice_points()
    if not pts:
        return []
    floors = [min(pairing(v, S) for v in pts) for S in CHAMBERS]
    start = f.support
    seen = {start}
    queue = [start]
    found: Dict[Tuple[int, ...], GTFamily] = {}

    def excluded(m):
        return avoid is None or any(pairing(avoid, S) > m[ci] for ci, S in enumerate(CHAMBERS))

    while queue:
        m = queue.pop()
        if any(all(m[i] <= r[i] for i in range(6)) for r in found):
            continue
        try:
            fam = family_from_support(list(m), f.nu)
        except InconsistentFamily:
            fam = None
        if fam is not None and excluded(m) and is_gmv(fam):
            found[m] = fam
            continue
        for ci in range(6):
            if m[ci] - 1 < floors[ci]:
                continue
            m2 = m[:ci] + (m[ci] - 1,) + m[ci + 1:]
            if m2 not in seen:
                seen.add(m2)
                if len(seen) > state_budget:
                    raise BudgetExceeded("support tightening walk exceeded its budget")
                queue.append(m2)
    cands = list(found.values())
    out = []
    for P in cands:
        if not any(Q is not P and contains(Q, P) and Q.support != P.support for Q in cands):
            out.append(P)
    # dedupe identical supports
    uniq = {}
    for P in out:
        uniq[P.support] = P
    return sorted(uniq.values(), key=lambda P: P.support)


# ---------------------------------------------------------------------------
# the greedy engine
# ---------------------------------------------------------------------------

CellFn = Callable[[GTFamily, int], Tuple[int, bool]]


def _mv_cell_fn(P: GTFamily, b: int) -> Tuple[int, bool]:
    return gmv_dimension(P), True


def _pave(family: GTFamily, cell_fn: CellFn,
          forced: Optional[Sequence[Coweight]] = None,
          springer_c=None) -> List[PavingStep]:
    if is_gmv(family):
        actives = [family]
    else:
        actives = max_gmv_inside(family, None)
    forced = list(forced) if forced else []
    fi = 0
    steps: List[PavingStep] = []
    skel_cache: Dict[tuple, MomentGraph] = {}

    def skel(P: GTFamily) -> MomentGraph:
        key = (P.nu, P.vertices)
        if key not in skel_cache:
            skel_cache[key] = skeleton(P, springer_c=springer_c)
        return skel_cache[key]

    while actives:
        edge_union = set()
        for P in actives:
            edge_union.update(skel(P).edges)

        def cur_wt(v):
            return sum(1 for e in edge_union if e[0] == v or e[1] == v)

        if fi < len(forced):
            v = forced[fi]
            fi += 1
            cands = [(P, b) for P in actives for b in range(6) if P.vertex(b) == v]
            if not cands:
                raise PavingVerificationFailed(
                    f"designated vertex {v} is not a corner of any active polytope "
                    f"(actives: {[P.vertices for P in actives]})")
        else:
            cands = [(P, b) for P in actives for b in range(6)]
        scored = sorted(
            cands,
            key=lambda pb: (-gmv_dimension(pb[0]), cur_wt(pb[0].vertex(pb[1])),
                            pb[0].vertex(pb[1]), pb[1], pb[0].support))
        P, b = scored[0]
        v = P.vertex(b)
        for Q in actives:
            if Q.support != P.support and Q.contains_point(v):
                raise PavingVerificationFailed(
                    f"vertex {v} of the chosen polytope lies in another active piece "
                    f"{Q.vertices}; the subdivision claim fails here")
        dim, ok = cell_fn(P, b)
        if not ok:
            raise PavingVerificationFailed(
                f"cell at vertex {v}, chamber {b} of {P.vertices} is not affine "
                f"by the criterion")
        steps.append(PavingStep(v, b, dim, P))
        subs = max_gmv_inside(P, v)
        pool = [Q for Q in actives if Q.support != P.support] + subs
        uniq = {}
        for Q in pool:
            uniq[Q.support] = Q
        pool = list(uniq.values())
        actives = [Q for Q in pool
                   if not any(R.support != Q.support and contains(R, Q) for R in pool)]
        actives.sort(key=lambda Q: Q.support)
    want = set(family.lattice_points())
    got = [s.vertex for s in steps]
    if len(set(got)) != len(got) or set(got) != want:
        raise PavingVerificationFailed(
            f"paving steps visit {sorted(got)} but the fixed points are {sorted(want)}")
    return steps


def _verify_steps(steps: Sequence[PavingStep], family: GTFamily,
                  qs: Sequence[int], springer_pattern=None,
                  rng: Optional[random.Random] = None) -> dict:
    from .grass import iter_points
    record = {"per_q": [], "ok": True}
    for q in qs:
        field = PrimeField(q, 64)
        pts = iter_points(family, field)
        if springer_pattern is not None:
            from .springer import member_springer, synthesize_gamma
            gam = synthesize_gamma(springer_pattern, field, rng or random.Random(0))
            pts = (x for x in pts if member_springer(x, gam))
        counts = [0] * len(steps)
        total = 0
        for x in pts:
            total += 1
            fx = ec(x)
            supp = fx.support
            for i, st in enumerate(steps):
                target = st.polytope.support
                if all(a <= b for a, b in zip(supp, target)) \
                        and fx.vertices[st.borel] == st.vertex:
                    counts[i] += 1
                    break
            else:
                raise PavingVerificationFailed(f"point {x} matched no paving step")
        for st, cnt in zip(steps, counts):
            if cnt != q ** st.dim:
                raise PavingVerificationFailed(
                    f"cell at {st.vertex} (chamber {st.borel}) counts {cnt} over F_{q}, "
                    f"wants {q}^{st.dim}")
        record["per_q"].append({"q": q, "total": total, "by_step": counts})
    return record


def greedy_paving(f: GTFamily, verify_qs: Sequence[int] = (2, 3),
                  rng: Optional[random.Random] = None) -> PavingPlan:
    """Contracting-cell paving in min-weight vertex order, verified by counts."""
    steps = _pave(f, _mv_cell_fn)
    verified = _verify_steps(steps, f, verify_qs, None, rng)
    return PavingPlan("greedy", f, tuple(steps), verified)
