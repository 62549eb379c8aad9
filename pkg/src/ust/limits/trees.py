"""Rooted trees, tree-map counts and Galton-Watson sampling.

Parenthesis encoding: a tree is written as the concatenation of its root's
child subtrees, each wrapped in one pair of parentheses.  So ``""`` is a
single vertex, ``"()"`` a single edge, ``"()()"`` a 2-star and ``"(())"`` a
path of two edges hanging from the root.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .. import kernels
from .._tables import POISSON1_CDF, derive_seed, seed_state
from ..graph import Graph, GraphError
from ..transfer import prob_edges_in

__all__ = [
    "RootedTree",
    "tree_map_count",
    "galton_watson_sample",
    "gw_generation_sizes",
    "incipient_cluster_sample",
    "gw_tree_moment",
    "incipient_tree_moment",
    "ust_tree_moment",
    "MomentEstimate",
    "GW_MAX_NODES",
    "UST_MOMENT_IMAGE_LIMIT",
]

GW_MAX_NODES = 1_000_000
UST_MOMENT_IMAGE_LIMIT = 200_000


@dataclass(frozen=True)
class RootedTree:
    children: tuple["RootedTree", ...] = ()
    # depth below which offspring were not drawn, if the tree was cut short
    truncated_at: int | None = field(default=None, compare=False)

    @cached_property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    @cached_property
    def height(self) -> int:
        return 1 + max(c.height for c in self.children) if self.children else 0

    @property
    def root_degree(self) -> int:
        return len(self.children)

    def __len__(self) -> int:
        return self.size

    @classmethod
    def from_parens(cls, text: str) -> "RootedTree":
        stack: list[list[RootedTree]] = [[]]
        for pos, ch in enumerate(text):
            if ch == "(":
                stack.append([])
            elif ch == ")":
                if len(stack) == 1:
                    raise ValueError(f"unmatched ')' at position {pos}")
                kids = stack.pop()
                stack[-1].append(cls(tuple(kids)))
            elif not ch.isspace():
                raise ValueError(f"unexpected character {ch!r} at position {pos}")
        if len(stack) != 1:
            raise ValueError("unbalanced parentheses")
        return cls(tuple(stack[0]))

    def to_parens(self) -> str:
        return "".join("(" + c.to_parens() + ")" for c in self.children)

    @classmethod
    def star(cls, k: int) -> "RootedTree":
        return cls((cls(),) * k)

    @classmethod
    def path(cls, k: int) -> "RootedTree":
        t = cls()
        for _ in range(k):
            t = cls((t,))
        return t

    @classmethod
    def from_bfs(cls, offspring, truncated_at: int | None = None) -> "RootedTree":
        """Build from offspring counts listed in breadth-first order."""
        off = [int(k) for k in offspring]
        if not off:
            raise ValueError("empty offspring sequence")
        first = [0] * len(off)
        nxt = 1
        for i, k in enumerate(off):
            first[i] = nxt
            nxt += k
        if nxt != len(off):
            raise ValueError("offspring counts do not match sequence length")
        built: list[RootedTree | None] = [None] * len(off)
        for i in range(len(off) - 1, -1, -1):
            built[i] = cls(tuple(built[first[i] + j] for j in range(off[i])))
        root = built[0]
        if truncated_at is not None:
            root = cls(root.children, truncated_at)
        return root

    def truncate(self, r: int) -> "RootedTree":
        """The subtree of vertices within distance ``r`` of the root."""
        if r < 0:
            raise ValueError("r must be >= 0")
        if r == 0:
            return RootedTree()
        return RootedTree(tuple(c.truncate(r - 1) for c in self.children))

    def __repr__(self) -> str:
        return f"RootedTree({self.to_parens()!r})"


def tree_map_count(w: RootedTree, t: RootedTree) -> int:
    """Number of injective maps of t into w sending root to root and children to children.

    For a root-preserving injective map between trees, sending neighbours to
    neighbours already forces each child onto a child, so this is the plain
    neighbour-preserving count.
    """
    return _count(w, t)


@lru_cache(maxsize=1 << 16)
def _count(w: RootedTree, t: RootedTree) -> int:
    kids = t.children
    k = len(kids)
    if k == 0:
        return 1
    if k > len(w.children) or t.height > w.height or t.size > w.size:
        return 0
    # dp over subsets of t's children already placed, scanning w's children
    full = (1 << k) - 1
    dp = [0] * (full + 1)
    dp[0] = 1
    for d in w.children:
        ways = [_count(d, c) for c in kids]
        for mask in range(full, -1, -1):
            if not dp[mask]:
                continue
            for i in range(k):
                if ways[i] and not mask >> i & 1:
                    dp[mask | 1 << i] += dp[mask] * ways[i]
    return dp[full]


def galton_watson_sample(seed: int, max_depth: int, max_nodes: int = GW_MAX_NODES) -> RootedTree:
    """Poisson(1) Galton-Watson tree cut at ``max_depth``.

    ``truncated_at`` is set when some vertex at the cut depth exists, since its
    offspring were never drawn.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    off, levels, _ = kernels.gw_bfs(seed_state(seed), max_depth, POISSON1_CDF, max_nodes)
    cut = max_depth if len(levels) == max_depth + 1 and levels[-1] > 0 else None
    return RootedTree.from_bfs(off, cut)


def gw_generation_sizes(samples: int, seed: int, generations: int, max_nodes: int = GW_MAX_NODES) -> np.ndarray:
    """Generation sizes Z_0..Z_generations of independent trees, shape (samples, generations+1).

    Sample i uses seed ``derive_seed(seed, i)`` and matches
    ``galton_watson_sample(derive_seed(seed, i), generations)``.
    """
    seeds = np.asarray([derive_seed(seed, i) for i in range(samples)], dtype=np.uint64)
    return kernels.gw_level_sizes(seeds, generations, POISSON1_CDF, max_nodes)


def incipient_cluster_sample(r: int, seed: int, max_nodes: int = GW_MAX_NODES) -> RootedTree:
    """The critical tree conditioned to survive, seen to distance ``r`` from the root.

    A backbone v_0..v_r carries an independent Galton-Watson tree at each v_i,
    cut at depth r - i so the whole tree has height at most r.  The backbone
    child comes first among v_i's children.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    state = seed_state(seed)
    bushes = []
    for i in range(r + 1):
        off, _, state = kernels.gw_bfs(state, r - i, POISSON1_CDF, max_nodes)
        bushes.append(RootedTree.from_bfs(off))
    tree = bushes[r]
    for i in range(r - 1, -1, -1):
        tree = RootedTree((tree,) + bushes[i].children)
    return tree


@dataclass(frozen=True)
class MomentEstimate:
    mean: float
    stderr: float
    samples: int

    def within(self, target: float, sigmas: float = 3.0) -> bool:
        return abs(self.mean - target) <= sigmas * self.stderr


def _estimate(values: list[int]) -> MomentEstimate:
    a = np.asarray(values, dtype=np.float64)
    sd = float(a.std(ddof=1)) if len(a) > 1 else 0.0
    return MomentEstimate(float(a.mean()), sd / math.sqrt(len(a)), len(a))


def gw_tree_moment(t: RootedTree, samples: int, seed: int) -> MomentEstimate:
    """Monte Carlo estimate of E N(U; t) for the critical Poisson(1) tree U."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    depth = t.height + 1
    vals = [
        tree_map_count(galton_watson_sample(derive_seed(seed, i), depth), t)
        for i in range(samples)
    ]
    return _estimate(vals)


def incipient_tree_moment(t: RootedTree, r: int, samples: int, seed: int) -> MomentEstimate:
    """Monte Carlo estimate of E N(P∧r; t) over incipient-cluster samples."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    vals = [
        tree_map_count(incipient_cluster_sample(r, derive_seed(seed, i)), t)
        for i in range(samples)
    ]
    return _estimate(vals)


def _images(g: Graph, v: int, t: RootedTree):
    """Yield edge-id tuples of every injective child-respecting image of t rooted at v."""
    order: list[tuple[int, RootedTree]] = []  # (parent slot, node) in preorder

    def walk(node, parent_slot):
        slot = len(order)
        order.append((parent_slot, node))
        for c in node.children:
            walk(c, slot)

    walk(t, -1)
    where = [v] + [0] * (len(order) - 1)
    used = {v}
    edges: list[int] = []

    def place(i):
        if i == len(order):
            yield tuple(edges)
            return
        parent = where[order[i][0]]
        for eid, u in g.adjacency[parent]:
            if u in used:
                continue
            used.add(u)
            where[i] = u
            edges.append(eid)
            yield from place(i + 1)
            edges.pop()
            used.discard(u)

    yield from place(1)


def ust_tree_moment(g: Graph, v: int, t: RootedTree) -> Fraction:
    """Exact E N(T; t) for a uniform spanning tree T of g rooted at ``v``.

    Each image of t in g is a subtree; its chance of lying inside T is one
    transfer-impedance determinant.  Images sharing an edge set are grouped.
    """
    if not 0 <= v < g.vertex_count:
        raise GraphError(f"vertex {v} out of range")
    tally: Counter = Counter()
    for n, img in enumerate(_images(g, v, t)):
        if n >= UST_MOMENT_IMAGE_LIMIT:
            raise GraphError(f"more than {UST_MOMENT_IMAGE_LIMIT} images of t")
        tally[frozenset(img)] += 1
    return sum(
        (c * prob_edges_in(g, sorted(s), exact=True) for s, c in tally.items()),
        Fraction(0),
    )
