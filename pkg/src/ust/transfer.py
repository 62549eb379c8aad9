"""Transfer impedances and determinantal spanning-tree probabilities.

For oriented edges e = x->y and f = z->w, H(e, f) = φ_xy(z) - φ_xy(w) is the
voltage across f when a unit current enters at x and leaves at y.  For a
uniform spanning tree T, P(e_1..e_r in T) = det[H(e_i, e_j)].

The determinant route is only used on unweighted graphs.  Weighted queries go
through :func:`prob_cylinder_weighted`, which conditions edge by edge with
contractions and deletions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .events import CylinderEvent
from .graph import Graph, GraphError, OrientedEdge, contract, delete
from .harmonic import effective_resistance, green_matrix
from .linalg import det, use_exact

__all__ = [
    "CylinderEvent",
    "TransferMatrix",
    "canonical",
    "transfer_impedance",
    "impedance_matrix",
    "prob_edges_in",
    "prob_cylinder",
    "prob_cylinder_weighted",
    "edge_probability",
    "degree_pmf",
    "DEGREE_PMF_LIMIT",
]

DEGREE_PMF_LIMIT = 20
FLOAT_CLAMP = 1e-12


@dataclass(frozen=True)
class TransferMatrix:
    edges: tuple[OrientedEdge, ...]
    entries: tuple[tuple, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def as_lists(self) -> list[list]:
        return [list(r) for r in self.entries]

    def det(self):
        exact = not self.entries or isinstance(self.entries[0][0], Fraction)
        return det(self.as_lists(), exact)


def canonical(g: Graph, eid: int) -> OrientedEdge:
    """Orient an edge from its lower vertex id to its higher one."""
    e = g.edge(eid)
    return OrientedEdge(eid, e.u <= e.v)


def _ends(g: Graph, oe: OrientedEdge) -> tuple[int, int]:
    e = g.edge(oe.edge)
    if e.is_loop:
        raise GraphError(f"edge {oe.edge} is a self-edge")
    return (e.u, e.v) if oe.forward else (e.v, e.u)


def _require_unweighted(g: Graph) -> None:
    if not g.is_unweighted:
        raise GraphError("determinant route needs an unweighted graph; use prob_cylinder_weighted")


def _h(gm, g: Graph, e: OrientedEdge, f: OrientedEdge):
    x, y = _ends(g, e)
    z, w = _ends(g, f)
    return gm[z][x] - gm[z][y] - gm[w][x] + gm[w][y]


def transfer_impedance(g: Graph, e: OrientedEdge, f: OrientedEdge, exact: bool | None = None):
    _require_unweighted(g)
    gm = green_matrix(g, exact)
    return _h(gm, g, e, f)


def impedance_matrix(
    g: Graph, edges: Sequence[OrientedEdge | int], exact: bool | None = None
) -> TransferMatrix:
    """Matrix of pairwise transfer impedances; bare ids get canonical orientation."""
    _require_unweighted(g)
    oes = tuple(canonical(g, e) if isinstance(e, int) else e for e in edges)
    if len({o.edge for o in oes}) != len(oes):
        raise GraphError("edges must be distinct")
    ex = use_exact(g.vertex_count, exact)
    gm = green_matrix(g, ex)
    cache = g.memo.setdefault(("impedance", ex), {})
    flip = [o.forward != canonical(g, o.edge).forward for o in oes]
    m = []
    for i, a in enumerate(oes):
        row = []
        for j, b in enumerate(oes):
            key = (a.edge, b.edge)
            if key not in cache:
                cache[key] = _h(gm, g, canonical(g, a.edge), canonical(g, b.edge))
            row.append(-cache[key] if flip[i] != flip[j] else cache[key])
        m.append(row)
    k = len(oes)
    for i in range(k):
        for j in range(i):
            if ex:
                assert m[i][j] == m[j][i], "transfer impedance not symmetric"
            else:
                assert abs(m[i][j] - m[j][i]) <= 1e-9, "transfer impedance not symmetric"
    return TransferMatrix(oes, tuple(tuple(r) for r in m))


def _has_cycle(g: Graph, ids: Iterable[int]) -> bool:
    parent = list(range(g.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in ids:
        e = g.edge(eid)
        a, b = find(e.u), find(e.v)
        if a == b:
            return True
        parent[a] = b
    return False


def _finish(p, ex: bool):
    if ex:
        return p
    if -FLOAT_CLAMP < p < 0:
        return 0.0
    return p


def prob_edges_in(g: Graph, edges: Sequence[int], exact: bool | None = None):
    """P(all of ``edges`` are in a uniform spanning tree)."""
    return prob_cylinder(g, CylinderEvent(tuple(edges), ()), exact)


def prob_cylinder(g: Graph, ev: CylinderEvent, exact: bool | None = None):
    """P(include ⊆ T and exclude ∩ T = ∅) as one determinant.

    Rows of excluded edges are replaced by the matching rows of I - M.
    """
    _require_unweighted(g)
    ev.validate(g)
    ex = use_exact(g.vertex_count, exact)
    zero, one = (Fraction(0), Fraction(1)) if ex else (0.0, 1.0)
    if _has_cycle(g, ev.include):
        return zero
    exclude = [f for f in ev.exclude if not g.edge(f).is_loop]
    ids = list(ev.include) + exclude
    if not ids:
        return one
    m = impedance_matrix(g, ids, ex).as_lists()
    r = len(ev.include)
    for i in range(r, len(ids)):
        m[i] = [(one if i == j else zero) - m[i][j] for j in range(len(ids))]
    return _finish(det(m, ex), ex)


@lru_cache(maxsize=65536)
def edge_probability(g: Graph, eid: int) -> Fraction:
    """P(e in T) for a weight-selected tree: w(e) times the resistance across e."""
    e = g.edge(eid)
    if e.is_loop:
        return Fraction(0)
    return e.weight * effective_resistance(g, e.u, e.v, exact=True)


def prob_cylinder_weighted(g: Graph, ev: CylinderEvent) -> Fraction:
    """Weight-selected tree probability of a cylinder event, by conditioning.

    Each included edge contributes P(e in T) and is contracted; each excluded
    edge contributes 1 - P(f in T) and is deleted.  Includes go first.
    """
    ev.validate(g)
    return _weighted(g, ev.include, ev.exclude)


@lru_cache(maxsize=65536)
def _weighted(g: Graph, inc: tuple[int, ...], exc: tuple[int, ...]) -> Fraction:
    if inc:
        e = g.edge(inc[0])
        if e.is_loop:
            return Fraction(0)
        p = edge_probability(g, e.id)
        if p == 0:
            return p
        h, _ = contract(g, e.id)
        return p * _weighted(h, inc[1:], exc)
    if exc:
        f = g.edge(exc[0])
        if f.is_loop:
            return _weighted(g, (), exc[1:])
        p = edge_probability(g, f.id)
        if p == 1:
            return Fraction(0)
        return (1 - p) * _weighted(delete(g, f.id), (), exc[1:])
    return Fraction(1)


def degree_pmf(g: Graph, v: int, exact: bool | None = None) -> dict[int, object]:
    """Exact law of the tree degree of ``v``, summing cylinder events over edge subsets."""
    _require_unweighted(g)
    if not 0 <= v < g.vertex_count:
        raise GraphError(f"vertex {v} out of range")
    star = [eid for eid, _ in g.adjacency[v] if not g.edge(eid).is_loop]
    if len(star) > DEGREE_PMF_LIMIT:
        raise GraphError(f"degree {len(star)} exceeds enumeration limit {DEGREE_PMF_LIMIT}")
    ex = use_exact(g.vertex_count, exact)
    zero, one = (Fraction(0), Fraction(1)) if ex else (0.0, 1.0)
    k = len(star)
    full = impedance_matrix(g, star, ex).as_lists()
    pmf = {d: zero for d in range(k + 1)}
    for mask in itertools.product((True, False), repeat=k):
        # simultaneous row/column permutation keeps det, so row order is free
        m = [
            list(full[i]) if mask[i] else [(one if i == j else zero) - full[i][j] for j in range(k)]
            for i in range(k)
        ]
        pmf[sum(mask)] += det(m, ex)
    return {d: _finish(p, ex) for d, p in pmf.items()}
