"""Moment graphs of truncated affine Grassmannians and formal Betti numbers.

The 1-skeleton has the polytope's lattice points as vertices and one edge for
each 1-dimensional orbit of the extended torus; an edge joining v and
v - k*coroot(a) is labeled (a, k).  A total order on the vertices orients the
graph (source = larger) and its out-degree statistics give a formal Poincare
polynomial; the minimum over all orders is computed exactly by a subset scan.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded
from .grass import curve_point, member
from .laurent import PrimeField
from .rootdata import POSROOTS, GTFamily, Coweight, Root, coroot, scale_cw, sub_cw

Edge = Tuple[Coweight, Coweight, Root, int]


@dataclass(frozen=True)
class MomentGraph:
    vertices: Tuple[Coweight, ...]
    edges: Tuple[Edge, ...]

    def incident(self, v: Coweight) -> List[Edge]:
        return [e for e in self.edges if e[0] == v or e[1] == v]


_SKELETON_FIELD = PrimeField(2, 64)

_LINE_INDEX = {(1, 2): 0, (2, 3): 1, (1, 3): 2}


def skeleton(f: GTFamily, springer_c=None) -> MomentGraph:
    """1-skeleton of the truncation (intersected with a Springer fiber if given).

    Orbit membership in the truncation is decided exactly: the curve point has
    monomial minors, so one coefficient value per edge suffices at any prime.
    The Springer condition on the curve is exactly k <= val(alpha(gamma)),
    supplied as the root-valuation triple (c12, c23, c13).
    """
    verts = f.lattice_points()
    vset = set(verts)
    edges = []
    for v in verts:
        for a in POSROOTS:
            for k in range(1, f.span() + 1):
                u = sub_cw(v, scale_cw(k, coroot(a)))
                if u not in vset:
                    continue
                if springer_c is not None and k > springer_c[_LINE_INDEX[a]]:
                    continue
                x = curve_point(_SKELETON_FIELD, a, k, v)
                if member(x, f):
                    edges.append((v, u, a, k))
    edges.sort()
    return MomentGraph(tuple(verts), tuple(edges))


def wt(g: MomentGraph, v: Coweight) -> int:
    return len(g.incident(v))


def L(g: MomentGraph, v: Coweight, a: Root) -> int:
    line = a if a[0] < a[1] else (a[1], a[0])
    return sum(1 for e in g.incident(v) if e[2] == line)


@dataclass(frozen=True)
class PoincarePoly:
    """Coefficients b_0, b_2, b_4, ... of a formal Poincare polynomial."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_dims(cls, dims: Sequence[int]) -> "PoincarePoly":
        cs = [0] * (max(dims, default=0) + 1)
        for d in dims:
            cs[d] += 1
        return cls(tuple(cs))

    def evaluate(self, q: int) -> int:
        return sum(c * q ** i for i, c in enumerate(self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(str(c) if i == 0 else
                             (f"t^{2 * i}" if c == 1 else f"{c}*t^{2 * i}"))
        return " + ".join(parts)


def compare(p: PoincarePoly, q: PoincarePoly) -> int:
    """-1 if p < q (leading coefficient of q - p positive), 0 if equal, +1 if p > q."""
    n = max(len(p.coeffs), len(q.coeffs))
    for i in reversed(range(n)):
        a = p.coeffs[i] if i < len(p.coeffs) else 0
        b = q.coeffs[i] if i < len(q.coeffs) else 0
        if a != b:
            return -1 if a < b else 1
    return 0


def orient(g: MomentGraph, order: Sequence[Coweight]) -> Tuple[Tuple[Coweight, Coweight], ...]:
    """Direct every edge from its order-larger endpoint (an acyclic orientation).

    ``order`` lists the vertices from largest to smallest.
    """
    rank = {v: i for i, v in enumerate(order)}
    if len(rank) != len(g.vertices) or set(rank) != set(g.vertices):
        raise ValueError("order must enumerate the graph vertices")
    return tuple((u, v) if rank[u] < rank[v] else (v, u) for (u, v, _a, _k) in g.edges)


def formal_betti(g: MomentGraph, order: Sequence[Coweight]) -> PoincarePoly:
    """Out-degree statistics of the orientation induced by a total order."""
    out: Dict[Coweight, int] = {v: 0 for v in g.vertices}
    for (src, _tgt) in orient(g, order):
        out[src] += 1
    return PoincarePoly.from_dims(list(out.values()))


def min_formal_poincare(g: MomentGraph, budget: int = 1 << 18):
    """Exact minimum of formal_betti over all total orders, with a witness order.

    Scans subsets: placing vertices from the top, a vertex's out-degree is its
    number of edges (with multiplicity) to vertices not yet placed.  The
    compare order is translation invariant, so prefix minima extend.
    """
    verts = list(g.vertices)
    n = len(verts)
    if n == 0:
        return PoincarePoly(()), []
    if (1 << n) > budget:
        raise BudgetExceeded(f"{n} vertices exceed the order-scan budget")
    idx = {v: i for i, v in enumerate(verts)}
    mult = [[0] * n for _ in range(n)]
    deg = [0] * n
    for (u, v, _a, _k) in g.edges:
        iu, iv = idx[u], idx[v]
        mult[iu][iv] += 1
        mult[iv][iu] += 1
        deg[iu] += 1
        deg[iv] += 1
    maxdeg = max(deg, default=0)

    def better(a, b):
        if b is None:
            return True
        for i in reversed(range(maxdeg + 1)):
            if a[i] != b[i]:
                return a[i] < b[i]
        return False

    size = 1 << n
    best: List[Optional[Tuple[int, ...]]] = [None] * size
    parent: List[int] = [-1] * size
    best[0] = tuple([0] * (maxdeg + 1))
    for mask in range(size):
        cur = best[mask]
        if cur is None:
            continue
        for v in range(n):
            if mask & (1 << v):
                continue
            above = sum(mult[v][u] for u in range(n) if mask & (1 << u))
            out = deg[v] - above
            cand = list(cur)
            cand[out] += 1
            cand = tuple(cand)
            m2 = mask | (1 << v)
            if better(cand, best[m2]):
                best[m2] = cand
                parent[m2] = v
    full = size - 1
    order_idx = []
    mask = full
    while mask:
        v = parent[mask]
        order_idx.append(v)
        mask ^= (1 << v)
    order_idx.reverse()
    order = [verts[i] for i in order_idx]
    coeffs = best[full]
    return PoincarePoly(coeffs), order


def to_dot(g: MomentGraph) -> str:
    lines = ["graph skeleton {"]
    for v in g.vertices:
        name = "v" + "_".join(str(c).replace("-", "m") for c in v)
        lines.append(f'  {name} [label="{v}"];')
    for (u, v, a, k) in g.edges:
        nu = "v" + "_".join(str(c).replace("-", "m") for c in u)
        nv = "v" + "_".join(str(c).replace("-", "m") for c in v)
        lines.append(f'  {nu} -- {nv} [label="a{a[0]}{a[1]}, k={k}"];')
    lines.append("}")
    return "\n".join(lines)


def graph_to_json(g: MomentGraph):
    return {
        "vertices": [list(v) for v in g.vertices],
        "edges": [{"u": list(u), "v": list(v), "alpha": list(a), "k": k}
                  for (u, v, a, k) in g.edges],
    }
