import random
from collections import Counter
from fractions import Fraction as F
from math import sqrt

import numpy as np
import pytest
from scipy import stats

from conftest import FIG2_LABELS, fig2, g1, graph_corpus
from ust.graph import GraphError, build_graph, generate_family, is_spanning_tree, regularize
from ust.oracle import enumerate_spanning_trees, tree_key
from ust.sampler import (
    aldous_broder,
    sample_frequencies,
    sample_tree_census,
    sample_trees,
    tree_from_walk,
)

# fixed-seed outputs of the walk on G1 from vertex 0 (parent edge per vertex)
GOLDEN_G1 = {
    0: (-1, 1, 2, 5, 4),
    1: (-1, 0, 1, 5, 3),
    42: (-1, 0, 1, 5, 3),
    2**64 - 1: (-1, 0, 1, 2, 3),
}
GOLDEN_T4 = (6, 3, 2, 4, 14, -1, 10, 7, 9, 16, 18, 20, 24, 27, 29, 28)


def within_3_sigma(freq, p, n):
    return abs(freq - p) <= 3 * sqrt(p * (1 - p) / n)


def test_walk_trace_fixture():
    g = fig2()
    walk = [FIG2_LABELS.index(c) for c in "ABFBCDAE"]
    t = tree_from_walk(g, walk)
    names = {FIG2_LABELS[a] + FIG2_LABELS[b] for a, b in t.arrows()}
    assert names == {"BA", "FB", "CB", "DC", "EA"}
    assert t.root == 0
    t.check()


def test_walk_must_cover():
    with pytest.raises(GraphError):
        tree_from_walk(fig2(), [0, 1, 2])


def test_walk_needs_edge_for_parallel_step():
    g = build_graph(2, [(0, 1), (0, 1)])
    with pytest.raises(GraphError):
        tree_from_walk(g, [0, 1])
    assert tree_from_walk(g, [0, 1], [1]).edges == (1,)


@pytest.mark.parametrize("seed,want", sorted(GOLDEN_G1.items()))
def test_golden_g1(seed, want):
    assert aldous_broder(g1(), 0, seed).parent_edge == want


def test_golden_t4():
    assert aldous_broder(generate_family("torus", 4), 5, 7).parent_edge == GOLDEN_T4


@pytest.mark.parametrize("backend", ["python", "cython"])
def test_batch_matches_single(backend):
    g = g1()
    rows = sample_trees(g, 50, 9, backend=backend)
    from ust._tables import derive_seed

    for i in (0, 17, 49):
        assert tuple(rows[i]) == aldous_broder(g, 0, derive_seed(9, i)).parent_edge


def test_path_has_one_tree():
    g = generate_family("path", 3)
    for s in range(20):
        assert aldous_broder(g, 1, s).edges == (0, 1)
    assert sample_tree_census(g, 500, 1) == Counter({"0,1": 500})


def test_disconnected_rejected():
    with pytest.raises(GraphError):
        aldous_broder(build_graph(3, [(0, 1)]), 0, 1)


def test_single_vertex():
    t = aldous_broder(build_graph(1, []), 0, 3)
    assert t.edges == () and t.root == 0


def test_fuzz_spanning():
    rng = random.Random(0)
    total = 0
    for g in graph_corpus(100, 77, max_vertices=8, max_edges=14, loops=True, weights=True):
        start = rng.randrange(g.vertex_count)
        rows = sample_trees(g, 100, rng.randrange(2**32), start)
        for row in rows:
            edges = [int(e) for e in row if e >= 0]
            assert is_spanning_tree(g, edges)
            total += 1
        t = aldous_broder(g, start, 1)
        t.check()
    assert total == 10_000


def test_frequencies_deterministic():
    assert sample_frequencies(g1(), 2000, 5) == sample_frequencies(g1(), 2000, 5)


def test_triangle_frequencies():
    n = 30_000
    f = sample_frequencies(generate_family("cycle", 3), n, 123)
    assert all(within_3_sigma(x, 2 / 3, n) for x in f.values())


def test_g1_frequencies():
    n = 110_000
    f = sample_frequencies(g1(), n, 2024)
    assert within_3_sigma(f[0], 8 / 11, n)
    assert within_3_sigma(f[3], 7 / 11, n)


def test_weighted_triangle():
    g = build_graph(3, [(0, 1, 2), (1, 2), (2, 0)])
    n = 30_000
    f = sample_frequencies(g, n, 8)
    assert within_3_sigma(f[0], 4 / 5, n)
    c = sample_tree_census(g, n, 8)
    for key, p in {"0,1": 0.4, "0,2": 0.4, "1,2": 0.2}.items():
        assert within_3_sigma(c[key] / n, p, n)


def chi_square_uniform(census, keys):
    counts = np.array([census.get(k, 0) for k in keys])
    assert counts.sum() == sum(census.values())
    return stats.chisquare(counts).statistic


def test_g1_census_uniform():
    n = 110_000
    c = sample_tree_census(g1(), n, 31)
    keys = [tree_key(t) for t in enumerate_spanning_trees(g1()).trees]
    assert set(c) == set(keys)
    assert chi_square_uniform(c, keys) < stats.chi2.ppf(0.999, 10)


def test_start_vertex_independence():
    n = 50_000
    a = sample_tree_census(g1(), n, 1, start=0)
    b = sample_tree_census(g1(), n, 2, start=2)
    keys = sorted(set(a) | set(b))
    table = [[a[k] for k in keys], [b[k] for k in keys]]
    assert stats.chi2_contingency(table).pvalue > 0.001


def test_regularized_graph_samples_same_law():
    g = g1()
    r = regularize(g)
    n = 40_000
    c = sample_tree_census(r, n, 4, start=3)
    keys = [tree_key(t) for t in enumerate_spanning_trees(g).trees]
    assert set(c) <= set(keys)
    assert chi_square_uniform(c, keys) < stats.chi2.ppf(0.999, 10)


def test_census_guard():
    with pytest.raises(GraphError):
        sample_tree_census(generate_family("complete", 5), 10, 1)


def test_bad_inputs():
    with pytest.raises(ValueError):
        sample_trees(g1(), 0, 1)
    with pytest.raises(GraphError):
        aldous_broder(g1(), 9, 1)


def test_census_guard_counts_trees_not_weight():
    g = build_graph(3, [(0, 1, "1/100"), (1, 2), (2, 0)])
    assert sum(sample_tree_census(g, 100, 1).values()) == 100
    heavy = build_graph(5, [(e.u, e.v, 50) for e in generate_family("complete", 5).edges])
    with pytest.raises(GraphError):
        sample_tree_census(heavy, 10, 1)
