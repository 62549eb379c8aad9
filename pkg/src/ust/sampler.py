"""Random spanning trees from weighted random walks (Aldous-Broder).

The walk leaves vertex v along edge e with probability w(e)/d(v), chosen by
inverting cumulative weights over v's incident half-edges in edge-id order.
Every vertex except the start records the edge of its first entry; those
edges, pointed back toward where the walk came from, form a directed tree
rooted at the start.  The undirected tree is distributed with probability
proportional to the product of its edge weights.

Seeding: trial ``i`` of a batch seeded with ``s`` runs with seed
``derive_seed(s, i)``; see :mod:`ust._tables` for the generator.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from ._tables import derive_seed
from .graph import Graph, GraphError, build_graph, is_connected
from .oracle import matrix_tree_count, tree_key

__all__ = [
    "DirectedSpanningTree",
    "aldous_broder",
    "tree_from_walk",
    "sample_trees",
    "sample_frequencies",
    "sample_tree_census",
    "trial_seeds",
    "CENSUS_TREE_LIMIT",
]

CENSUS_TREE_LIMIT = 100
_CHUNK = 8192


@dataclass(frozen=True)
class DirectedSpanningTree:
    root: int
    parent_edge: tuple[int, ...]
    parent_vertex: tuple[int, ...]

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(sorted(e for e in self.parent_edge if e >= 0))

    def arrows(self) -> list[tuple[int, int]]:
        """Oriented edges as (from, to) vertex pairs, pointing toward the root."""
        return [(v, p) for v, p in enumerate(self.parent_vertex) if p >= 0]

    def check(self) -> None:
        """Assert one out-edge per non-root vertex and that arrows reach the root."""
        n = len(self.parent_vertex)
        for v in range(n):
            seen = set()
            x = v
            while x != self.root:
                if x in seen or self.parent_vertex[x] < 0:
                    raise AssertionError(f"arrows from {v} do not reach the root")
                seen.add(x)
                x = self.parent_vertex[x]


def _walk_arrays(g: Graph):
    if "walk_arrays" in g.memo:
        return g.memo["walk_arrays"]
    offsets = [0]
    nbr, eid, cumw = [], [], []
    deg = []
    for v in range(g.vertex_count):
        acc = 0.0
        for e, w in g.adjacency[v]:
            acc += float(g.edge(e).weight)
            nbr.append(w)
            eid.append(e)
            cumw.append(acc)
        deg.append(acc)
        offsets.append(len(nbr))
    arrays = (
        np.asarray(offsets, dtype=np.int64),
        np.asarray(nbr, dtype=np.int64),
        np.asarray(eid, dtype=np.int64),
        np.asarray(cumw, dtype=np.float64),
        np.asarray(deg, dtype=np.float64),
    )
    g.memo["walk_arrays"] = arrays
    return arrays


def _check_walkable(g: Graph, start: int) -> None:
    if not 0 <= start < g.vertex_count:
        raise GraphError(f"start vertex {start} out of range")
    if not is_connected(g):
        raise GraphError("graph is disconnected; the walk would never finish")


def _to_tree(g: Graph, start: int, row) -> DirectedSpanningTree:
    parents = []
    for v, e in enumerate(row):
        e = int(e)
        parents.append(-1 if e < 0 else g.edge(e).other(v))
    return DirectedSpanningTree(start, tuple(int(e) for e in row), tuple(parents))


def _kernel(backend: str | None):
    return kernels if backend is None else kernels.get_backend(backend)


def aldous_broder(g: Graph, start: int, seed: int, backend: str | None = None) -> DirectedSpanningTree:
    _check_walkable(g, start)
    k = _kernel(backend)
    rows = k.walk_trees(*_walk_arrays(g), start, np.asarray([seed], dtype=np.uint64))
    return _to_tree(g, start, rows[0])


def tree_from_walk(g: Graph, walk: Sequence[int], edges: Sequence[int] | None = None) -> DirectedSpanningTree:
    """Apply the first-entry rule to a given walk.

    ``edges[k]`` is the edge used for step k -> k+1; when omitted, each step
    must have a unique connecting edge.  Raises if the walk misses a vertex.
    """
    if edges is None:
        edges = []
        for a, b in zip(walk, walk[1:]):
            cands = {e for e, w in g.adjacency[a] if w == b}
            if len(cands) != 1:
                raise GraphError(f"step {a}->{b} needs an explicit edge id")
            edges.append(cands.pop())
    start = walk[0]
    row = [-1] * g.vertex_count
    seen = {start}
    for (a, b), e in zip(zip(walk, walk[1:]), edges):
        if g.edge(e).other(a) != b:
            raise GraphError(f"edge {e} does not join {a} and {b}")
        if b not in seen:
            seen.add(b)
            row[b] = e
    if len(seen) != g.vertex_count:
        raise GraphError("walk does not cover every vertex")
    return _to_tree(g, start, row)


def trial_seeds(seed: int, trials: int, offset: int = 0) -> np.ndarray:
    return np.asarray([derive_seed(seed, i) for i in range(offset, offset + trials)], dtype=np.uint64)


def sample_trees(g: Graph, trials: int, seed: int, start: int = 0, backend: str | None = None) -> np.ndarray:
    """First-entry edges of ``trials`` independent walks, shape (trials, |V|)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _check_walkable(g, start)
    k = _kernel(backend)
    arrays = _walk_arrays(g)
    chunks = []
    for lo in range(0, trials, _CHUNK):
        seeds = trial_seeds(seed, min(_CHUNK, trials - lo), lo)
        chunks.append(k.walk_trees(*arrays, start, seeds))
    return np.concatenate(chunks, axis=0)


def sample_frequencies(
    g: Graph, trials: int, seed: int, start: int = 0, backend: str | None = None
) -> dict[int, float]:
    rows = sample_trees(g, trials, seed, start, backend)
    ids, counts = np.unique(rows[rows >= 0], return_counts=True)
    hits = dict(zip(ids.tolist(), counts.tolist()))
    return {e: hits.get(e, 0) / trials for e in g.edge_ids}


def sample_tree_census(
    g: Graph, trials: int, seed: int, start: int = 0, backend: str | None = None
) -> Counter:
    """Counts per distinct sampled tree, keyed by :func:`ust.oracle.tree_key`."""
    unit = build_graph(g.vertex_count, [(e.u, e.v) for e in g.edges])
    n_trees = matrix_tree_count(unit)
    if n_trees > CENSUS_TREE_LIMIT:
        raise GraphError(f"census limited to {CENSUS_TREE_LIMIT} trees, graph has {n_trees}")
    rows = sample_trees(g, trials, seed, start, backend)
    rows = np.sort(rows, axis=1)[:, 1:]
    uniq, counts = np.unique(rows, axis=0, return_counts=True)
    return Counter({tree_key(r.tolist()): int(c) for r, c in zip(uniq, counts)})
