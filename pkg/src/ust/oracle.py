"""Brute-force ground truth: tree enumeration, Matrix-Tree counts, bitree sums.

All arithmetic here is exact.  Everything probabilistic elsewhere in the
package is checked against these routines.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .events import CylinderEvent
from .graph import Edge, Graph, GraphError
from .harmonic import laplacian
from .linalg import bareiss_det

__all__ = [
    "TreeEnumeration",
    "ENUMERATION_EDGE_LIMIT",
    "enumerate_spanning_trees",
    "matrix_tree_count",
    "bitree_weight_sum",
    "brute_cylinder_prob",
    "tree_weight",
    "tree_key",
]

ENUMERATION_EDGE_LIMIT = 25


@dataclass(frozen=True)
class TreeEnumeration:
    trees: tuple[tuple[int, ...], ...]
    total_weight: Fraction

    def __len__(self) -> int:
        return len(self.trees)


def tree_key(edge_ids) -> str:
    """Canonical census key: sorted edge ids joined by commas."""
    return ",".join(str(i) for i in sorted(edge_ids))


def tree_weight(g: Graph, tree) -> Fraction:
    return prod((g.edge(i).weight for i in tree), start=Fraction(1))


class _RollbackDSU:
    __slots__ = ("parent", "size", "history")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history: list[int] = []

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] > self.size[rb]:
            ra, rb = rb, ra
        self.parent[ra] = rb
        self.size[rb] += self.size[ra]
        self.history.append(ra)
        return True

    def rollback(self) -> None:
        ra = self.history.pop()
        rb = self.parent[ra]
        self.size[rb] -= self.size[ra]
        self.parent[ra] = ra


def _trees_of(n: int, edges: list[Edge]) -> list[tuple[int, ...]]:
    """All spanning trees by include/exclude backtracking with cut pruning."""
    es = [e for e in edges if not e.is_loop]
    m = len(es)
    out: list[tuple[int, ...]] = []
    dsu = _RollbackDSU(n)
    chosen: list[int] = []

    def completable(j: int, comps: int) -> bool:
        # can the chosen forest plus es[j:] still connect everything?
        parent = [dsu.find(v) for v in range(n)]

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in es[j:]:
            a, b = find(e.u), find(e.v)
            if a != b:
                parent[a] = b
                comps -= 1
                if comps == 1:
                    return True
        return comps == 1

    def rec(i: int, comps: int) -> None:
        if comps == 1:
            out.append(tuple(chosen))
            return
        if m - i < comps - 1:
            return
        e = es[i]
        if dsu.union(e.u, e.v):
            chosen.append(e.id)
            rec(i + 1, comps - 1)
            chosen.pop()
            dsu.rollback()
        if completable(i + 1, comps):
            rec(i + 1, comps)

    if n == 1:
        return [()]
    rec(0, n)
    return sorted(out)


def _guard(g: Graph) -> None:
    m = sum(1 for e in g.edges if not e.is_loop)
    if m > ENUMERATION_EDGE_LIMIT:
        raise GraphError(f"enumeration limited to {ENUMERATION_EDGE_LIMIT} edges, graph has {m}")


def enumerate_spanning_trees(g: Graph) -> TreeEnumeration:
    """Every spanning tree as a sorted tuple of edge ids, in sorted order."""
    if "trees" in g.memo:
        return g.memo["trees"]
    _guard(g)
    trees = _trees_of(g.vertex_count, sorted(g.edges, key=lambda e: e.id))
    total = sum((tree_weight(g, t) for t in trees), Fraction(0))
    result = TreeEnumeration(tuple(trees), total)
    g.memo["trees"] = result
    return result


def matrix_tree_count(g: Graph, deleted_vertex: int = 0) -> Fraction:
    """Total spanning-tree weight: det of the Laplacian minus one row/column."""
    if not 0 <= deleted_vertex < g.vertex_count:
        raise GraphError(f"vertex {deleted_vertex} out of range")
    lap = laplacian(g, exact=True)
    keep = [v for v in range(g.vertex_count) if v != deleted_vertex]
    return bareiss_det([[lap[i][j] for j in keep] for i in keep])


def bitree_weight_sum(g: Graph, a: int, b: int) -> Fraction:
    """Weight of spanning forests with two components separating a from b.

    Such forests are exactly the spanning trees of g with a and b glued
    together, so this enumerates trees of the glued graph.
    """
    if a == b:
        raise GraphError("a and b must differ")
    for v in (a, b):
        if not 0 <= v < g.vertex_count:
            raise GraphError(f"vertex {v} out of range")
    _guard(g)
    lo, hi = min(a, b), max(a, b)

    def rho(z: int) -> int:
        if z == hi:
            return lo
        return z if z < hi else z - 1

    glued = [Edge(e.id, rho(e.u), rho(e.v), e.weight) for e in g.edges]
    trees = _trees_of(g.vertex_count - 1, sorted(glued, key=lambda e: e.id))
    return sum((tree_weight(g, t) for t in trees), Fraction(0))


def brute_cylinder_prob(g: Graph, ev: CylinderEvent) -> Fraction:
    """Weight fraction of spanning trees containing ev.include and avoiding ev.exclude."""
    ev.validate(g)
    enum = enumerate_spanning_trees(g)
    inc = set(ev.include)
    exc = set(ev.exclude)
    hit = Fraction(0)
    for t in enum.trees:
        ts = set(t)
        if inc <= ts and not (exc & ts):
            hit += tree_weight(g, t)
    return hit / enum.total_weight
