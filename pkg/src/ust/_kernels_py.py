"""Pure-Python kernels.  Must stay bit-for-bit identical to ``_kernels.pyx``."""
from __future__ import annotations

import numpy as np

from ._tables import INV_2_53, MASK64, XORSHIFT_MULT, seed_state


def next_u64(state: int) -> tuple[int, int]:
    x = state
    x ^= x >> 12
    x ^= (x << 25) & MASK64
    x ^= x >> 27
    return x, (x * XORSHIFT_MULT) & MASK64


def uniform(state: int) -> tuple[float, int]:
    state, out = next_u64(state)
    return (out >> 11) * INV_2_53, state


def walk_trees(offsets, nbr, eid, cumw, deg, start, seeds):
    """Run one weighted walk per seed; return first-entry edges, shape (trials, n).

    Entry ``[t, v]`` is the edge along which trial t first entered v, or -1
    for the start vertex.
    """
    offsets = [int(x) for x in offsets]
    nbr = [int(x) for x in nbr]
    eid = [int(x) for x in eid]
    cumw = [float(x) for x in cumw]
    deg = [float(x) for x in deg]
    n = len(offsets) - 1
    trials = len(seeds)
    out = np.full((trials, n), -1, dtype=np.int64)
    for t in range(trials):
        state = seed_state(int(seeds[t]))
        row = [-1] * n
        seen = [False] * n
        seen[start] = True
        remaining = n - 1
        v = start
        while remaining:
            x = state
            x ^= x >> 12
            x ^= (x << 25) & MASK64
            x ^= x >> 27
            state = x
            u = (((x * XORSHIFT_MULT) & MASK64) >> 11) * INV_2_53
            target = u * deg[v]
            lo, hi = offsets[v], offsets[v + 1]
            s = hi - 1
            for k in range(lo, hi):
                if target < cumw[k]:
                    s = k
                    break
            w = nbr[s]
            if not seen[w]:
                seen[w] = True
                row[w] = eid[s]
                remaining -= 1
            v = w
        out[t] = row
    return out


def _poisson(state: int, cdf) -> tuple[int, int]:
    u, state = uniform(state)
    k = 0
    kmax = len(cdf) - 1
    while k < kmax and u >= cdf[k]:
        k += 1
    return k, state


def gw_bfs(state: int, max_depth: int, cdf, max_nodes: int):
    """Poisson(1) Galton-Watson tree in BFS order, truncated at ``max_depth``.

    Returns ``(offspring, level_sizes, state)``.  Vertices at depth
    ``max_depth`` draw nothing and get offspring 0.
    """
    cdf = [float(c) for c in cdf]
    offspring: list[int] = []
    levels = [1]
    width = 1
    total = 1
    for _ in range(max_depth):
        nxt = 0
        for _ in range(width):
            k, state = _poisson(state, cdf)
            offspring.append(k)
            nxt += k
        total += nxt
        if total > max_nodes:
            raise OverflowError("Galton-Watson tree exceeded max_nodes")
        levels.append(nxt)
        width = nxt
        if not width:
            break
    offspring.extend([0] * width)
    return np.asarray(offspring, dtype=np.int64), np.asarray(levels, dtype=np.int64), state


def gw_level_sizes(seeds, max_depth: int, cdf, max_nodes: int):
    """Generation sizes Z_0..Z_max_depth for one tree per seed, shape (trials, max_depth+1)."""
    cdf = [float(c) for c in cdf]
    trials = len(seeds)
    out = np.zeros((trials, max_depth + 1), dtype=np.int64)
    for t in range(trials):
        state = seed_state(int(seeds[t]))
        width = 1
        out[t, 0] = 1
        total = 1
        for d in range(1, max_depth + 1):
            nxt = 0
            for _ in range(width):
                k, state = _poisson(state, cdf)
                nxt += k
            total += nxt
            if total > max_nodes:
                raise OverflowError("Galton-Watson tree exceeded max_nodes")
            out[t, d] = nxt
            width = nxt
            if not width:
                break
    return out
