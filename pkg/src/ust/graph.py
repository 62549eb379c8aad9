"""Finite weighted multigraphs: construction, deletion, contraction, families.

Edges carry conductances (weights) as exact :class:`~fractions.Fraction`
values.  Edge ids are assigned by list position at construction time and are
preserved by :func:`delete` and :func:`contract`, so an id always names the
same physical edge across a deletion/contraction sequence.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "Edge",
    "Graph",
    "OrientedEdge",
    "ContractionMap",
    "GraphError",
    "build_graph",
    "delete",
    "contract",
    "regularize",
    "generate_family",
    "is_spanning_tree",
    "is_connected",
    "torus_vertex",
    "grid_vertex",
    "FAMILIES",
]


class GraphError(ValueError):
    """Invalid graph construction or an operation the graph cannot support."""


def as_weight(value) -> Fraction:
    """Coerce an int, Fraction, decimal/"p/q" string or float to a Fraction."""
    if isinstance(value, Fraction):
        w = value
    elif isinstance(value, bool):
        raise GraphError(f"invalid weight {value!r}")
    elif isinstance(value, int):
        w = Fraction(value)
    elif isinstance(value, float):
        w = Fraction(repr(value))
    elif isinstance(value, str):
        try:
            w = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphError(f"invalid weight string {value!r}") from exc
    else:
        raise GraphError(f"invalid weight {value!r}")
    if w <= 0:
        raise GraphError(f"weight must be positive, got {value!r}")
    return w


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    weight: Fraction = Fraction(1)

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def resistance(self) -> Fraction:
        return 1 / self.weight

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise GraphError(f"vertex {x} is not an endpoint of edge {self.id}")


@dataclass(frozen=True)
class OrientedEdge:
    """An edge id plus a direction; ``forward`` means stored ``u`` -> ``v``."""

    edge: int
    forward: bool = True

    def reversed(self) -> "OrientedEdge":
        return OrientedEdge(self.edge, not self.forward)


@dataclass(frozen=True)
class ContractionMap:
    vertex_map: tuple[int, ...]
    edge_map: dict[int, int] = field(hash=False, compare=True)


@dataclass(frozen=True, eq=True)
class Graph:
    vertex_count: int
    edges: tuple[Edge, ...]

    # ---- lookups -------------------------------------------------------

    @cached_property
    def _by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    def edge(self, eid: int) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise GraphError(f"no edge with id {eid}") from None

    def has_edge(self, eid: int) -> bool:
        return eid in self._by_id

    @property
    def edge_ids(self) -> list[int]:
        return [e.id for e in self.edges]

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per-vertex ``(edge id, other endpoint)`` in edge-id order.

        A self-edge appears twice in its vertex's list, once per half-edge.
        """
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for e in sorted(self.edges, key=lambda e: e.id):
            adj[e.u].append((e.id, e.v))
            adj[e.v].append((e.id, e.u))
        return tuple(tuple(a) for a in adj)

    def degree(self, v: int) -> Fraction:
        """Weighted degree d(v); a self-edge contributes twice its weight."""
        return sum((self.edge(eid).weight for eid, _ in self.adjacency[v]), Fraction(0))

    def degree_count(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def is_unweighted(self) -> bool:
        """True when every non-loop edge has weight 1.

        Self-edge weights never influence trees or potentials, so they are
        ignored here.
        """
        return all(e.weight == 1 for e in self.edges if not e.is_loop)

    @cached_property
    def memo(self) -> dict:
        # per-graph cache for derived solver data; the graph itself never mutates
        return {}

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self.vertex_count}, edges={len(self.edges)})"


def build_graph(vertex_count: int, edge_list: Iterable[Sequence]) -> Graph:
    """Build a graph; edge ``k`` of ``edge_list`` gets id ``k``.

    Entries are ``(u, v)`` or ``(u, v, weight)``.
    """
    if vertex_count < 1:
        raise GraphError("a graph needs at least one vertex")
    edges = []
    for k, item in enumerate(edge_list):
        if len(item) == 2:
            u, v = item
            w = Fraction(1)
        elif len(item) == 3:
            u, v, w = item
            w = as_weight(w)
        else:
            raise GraphError(f"edge {k}: expected (u, v[, weight])")
        for x in (u, v):
            if not isinstance(x, int) or not 0 <= x < vertex_count:
                raise GraphError(f"edge {k}: endpoint {x!r} out of range")
        edges.append(Edge(k, u, v, w))
    return Graph(vertex_count, tuple(edges))


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def is_connected(g: Graph, edge_ids: Iterable[int] | None = None) -> bool:
    dsu = _DSU(g.vertex_count)
    parts = g.vertex_count
    es = g.edges if edge_ids is None else (g.edge(i) for i in edge_ids)
    for e in es:
        if dsu.union(e.u, e.v):
            parts -= 1
    return parts == 1


def delete(g: Graph, eid: int) -> Graph:
    """Remove edge ``eid``; raises if that disconnects the graph."""
    g.edge(eid)
    h = Graph(g.vertex_count, tuple(e for e in g.edges if e.id != eid))
    if not is_connected(h):
        raise GraphError(f"deleting edge {eid} disconnects the graph")
    return h


def contract(g: Graph, eid: int) -> tuple[Graph, ContractionMap]:
    """Merge the endpoints of ``eid``.

    The contracted edge is kept as a self-edge at the merged vertex, so every
    edge id of ``g`` survives.  Vertices are re-densified: the larger endpoint
    disappears and later vertices shift down by one.
    """
    e = g.edge(eid)
    if e.is_loop:
        raise GraphError(f"cannot contract self-edge {eid}")
    x, y = min(e.u, e.v), max(e.u, e.v)
    vmap = tuple(x if z == y else (z if z < y else z - 1) for z in range(g.vertex_count))
    edges = tuple(Edge(f.id, vmap[f.u], vmap[f.v], f.weight) for f in g.edges)
    return Graph(g.vertex_count - 1, edges), ContractionMap(vmap, {f.id: f.id for f in g.edges})


def regularize(g: Graph) -> Graph:
    """Pad every vertex with self-edge mass up to the maximum degree.

    Degrees use the self-edge-counts-twice convention, so an odd deficit is
    closed with one self-edge of weight 1/2 (contributing 1 to the degree).
    """
    if not g.is_unweighted:
        raise GraphError("regularize expects an unweighted graph")
    degs = [g.degree(v) for v in range(g.vertex_count)]
    target = max(degs)
    edges = list(g.edges)
    next_id = max((e.id for e in edges), default=-1) + 1
    for v, d in enumerate(degs):
        deficit = target - d
        while deficit >= 2:
            edges.append(Edge(next_id, v, v, Fraction(1)))
            next_id += 1
            deficit -= 2
        if deficit:
            edges.append(Edge(next_id, v, v, deficit / 2))
            next_id += 1
    if len(edges) == len(g.edges):
        return g
    return Graph(g.vertex_count, tuple(edges))


# ---- standard families ---------------------------------------------------

def torus_vertex(n: int, i: int, j: int) -> int:
    """Vertex id of torus point (i, j); ``i`` is the column, ``j`` the row."""
    return (i % n) + n * (j % n)


def grid_vertex(n: int, x: int, y: int) -> int:
    return x + n * y


def _complete(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def _torus(n: int) -> list[tuple[int, int]]:
    if n < 3:
        raise GraphError("torus needs n >= 3")
    out = []
    for j in range(n):
        for i in range(n):
            v = torus_vertex(n, i, j)
            out.append((v, torus_vertex(n, i + 1, j)))
            out.append((v, torus_vertex(n, i, j + 1)))
    return out


def _hypercube(n: int) -> list[tuple[int, int]]:
    return [(v, v | (1 << b)) for v in range(1 << n) for b in range(n) if not v & (1 << b)]


def _path(n: int) -> list[tuple[int, int]]:
    return [(k, k + 1) for k in range(n - 1)]


def _cycle(n: int) -> list[tuple[int, int]]:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return [(k, (k + 1) % n) for k in range(n)]


def _grid(n: int) -> list[tuple[int, int]]:
    out = []
    for y in range(n):
        for x in range(n):
            v = grid_vertex(n, x, y)
            if x + 1 < n:
                out.append((v, grid_vertex(n, x + 1, y)))
            if y + 1 < n:
                out.append((v, grid_vertex(n, x, y + 1)))
    return out


FAMILIES = {
    "complete": (lambda n: n, _complete),
    "torus": (lambda n: n * n, _torus),
    "hypercube": (lambda n: 1 << n, _hypercube),
    "path": (lambda n: n, _path),
    "cycle": (lambda n: n, _cycle),
    "grid": (lambda n: n * n, _grid),
}


def generate_family(family: str, n: int) -> Graph:
    """Unweighted member ``n`` of a named family.

    Grid and torus vertices are numbered row-major from the lower-left
    corner; see :func:`grid_vertex` and :func:`torus_vertex`.
    """
    if family not in FAMILIES:
        raise GraphError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    if not isinstance(n, int) or n < 1:
        raise GraphError(f"invalid size n={n!r}")
    size, make = FAMILIES[family]
    if family == "hypercube" and n > 20:
        raise GraphError("hypercube dimension too large")
    return build_graph(size(n), make(n))


def is_spanning_tree(g: Graph, s: Iterable[int]) -> bool:
    ids = list(s)
    if len(set(ids)) != len(ids) or len(ids) != g.vertex_count - 1:
        return False
    dsu = _DSU(g.vertex_count)
    for eid in ids:
        e = g.edge(eid)
        if not dsu.union(e.u, e.v):
            return False
    return True
