"""Spanning trees of the m x m grid as domino tilings (Temperley's bijection).

Cells of the (2m-1) x (2m-1) board are addressed (X, Y) with the origin at
the lower left.  Grid vertex (x, y) sits on cell (2x, 2y), the edge to its
right neighbour on (2x+1, 2y), the edge above on (2x, 2y+1), and the inner
face with lower-left corner (x, y) on (2x+1, 2y+1).  The lower-left cell is
removed.  The tree is rooted at grid vertex (0, 0), and the dual tree formed
by the edges crossing non-tree edges is rooted at the outer face.  Every
other vertex or face takes the domino toward its parent's connecting edge.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from ..graph import Graph, GraphError, generate_family, grid_vertex, is_spanning_tree

__all__ = ["DominoTiling", "temperley_matching", "board_cells", "OUTER_FACE"]

Cell = tuple[int, int]
OUTER_FACE = None


def board_cells(m: int) -> frozenset[Cell]:
    side = 2 * m - 1
    return frozenset((x, y) for x in range(side) for y in range(side)) - {(0, 0)}


@dataclass(frozen=True)
class DominoTiling:
    m: int
    dominoes: tuple[tuple[Cell, Cell], ...]

    @property
    def board(self) -> frozenset[Cell]:
        return board_cells(self.m)

    def validate(self) -> None:
        """Raise unless every board cell is covered exactly once by adjacent pairs."""
        seen: set[Cell] = set()
        for a, b in self.dominoes:
            if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
                raise AssertionError(f"cells {a} and {b} are not adjacent")
            for c in (a, b):
                if c in seen:
                    raise AssertionError(f"cell {c} covered twice")
                seen.add(c)
        if seen != self.board:
            raise AssertionError("tiling does not cover the board exactly")

    def key(self) -> frozenset:
        return frozenset(self.dominoes)


def _edge_cell(g: Graph, m: int, eid: int) -> Cell:
    e = g.edge(eid)
    a, b = sorted((e.u, e.v))
    (x, y) = (a % m, a // m)
    return (2 * x + 1, 2 * y) if b == a + 1 else (2 * x, 2 * y + 1)


def _dual_ends(g: Graph, m: int, eid: int) -> tuple:
    """The two faces an edge separates; faces are inner-face cells or OUTER_FACE."""
    cx, cy = _edge_cell(g, m, eid)
    side = 2 * m - 1
    if cy % 2 == 0:  # horizontal edge: faces below and above
        ends = ((cx, cy - 1), (cx, cy + 1))
    else:  # vertical edge: faces left and right
        ends = ((cx - 1, cy), (cx + 1, cy))
    return tuple(f if 0 <= f[0] < side and 0 <= f[1] < side else OUTER_FACE for f in ends)


def _orient(adj: dict, root) -> dict:
    """Parent-edge map of a BFS from ``root`` over adjacency {node: [(eid, nbr)]}."""
    parent = {root: None}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for eid, w in adj.get(u, ()):
            if w not in parent:
                parent[w] = eid
                queue.append(w)
    return parent


def temperley_matching(m: int, tree: Iterable[int]) -> DominoTiling:
    """Domino tiling of the board matching a spanning tree of ``grid(m)`` (edge ids)."""
    if m < 2:
        raise GraphError("m must be >= 2")
    g = generate_family("grid", m)
    tree = sorted(set(tree))
    if not is_spanning_tree(g, tree):
        raise GraphError("edge set is not a spanning tree of the grid")
    in_tree = set(tree)

    primal: dict = {}
    for eid in tree:
        e = g.edge(eid)
        primal.setdefault(e.u, []).append((eid, e.v))
        primal.setdefault(e.v, []).append((eid, e.u))
    dual: dict = {}
    for eid in g.edge_ids:
        if eid in in_tree:
            continue
        f1, f2 = _dual_ends(g, m, eid)
        dual.setdefault(f1, []).append((eid, f2))
        dual.setdefault(f2, []).append((eid, f1))

    dominoes = []
    for v, eid in _orient(primal, grid_vertex(m, 0, 0)).items():
        if eid is not None:
            dominoes.append(((2 * (v % m), 2 * (v // m)), _edge_cell(g, m, eid)))
    faces = _orient(dual, OUTER_FACE)
    if len(faces) != (m - 1) ** 2 + 1:
        raise AssertionError("dual edges do not connect every face")
    for f, eid in faces.items():
        if eid is not None:
            dominoes.append((f, _edge_cell(g, m, eid)))
    tiling = DominoTiling(m, tuple(sorted(tuple(sorted(d)) for d in dominoes)))
    tiling.validate()
    return tiling
