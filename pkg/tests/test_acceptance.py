"""Acceptance criteria, each at its stated tolerance and time budget.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section of the terminal summary: one PASS/FAIL line per criterion.
"""
import itertools
import math
import random
import time
from fractions import Fraction as F

import pytest
from scipy import stats

from conftest import G1_TREES_1BASED, fig2, FIG2_LABELS, g1, graph_corpus, t3_edge, t3_vertex
from ust.events import CylinderEvent
from ust.graph import build_graph, generate_family, torus_vertex
from ust.harmonic import effective_resistance, hitting_voltage, torus_potential, unit_current_potential
from ust.limits import (
    RootedTree,
    falling_factorial_moment,
    gw_tree_moment,
    incipient_tree_moment,
    kn_degree_pmf,
    spanning_tree_entropy_finite,
    spanning_tree_entropy_integral,
    temperley_matching,
    tree_map_count,
    ust_tree_moment,
)
from ust.oracle import brute_cylinder_prob, enumerate_spanning_trees, matrix_tree_count, tree_key
from ust.sampler import aldous_broder, sample_tree_census, tree_from_walk
from ust.transfer import degree_pmf, prob_cylinder, prob_cylinder_weighted, prob_edges_in

crit = pytest.mark.criterion
E_INV = math.exp(-1)

# random connected multigraphs with at most 8 edges, shared by criteria 8 and 9
CORPUS = graph_corpus(200, 8, max_vertices=6, max_edges=8)


class Clock:
    def __init__(self, budget):
        self.budget = budget
        self.t0 = time.perf_counter()

    def check(self):
        elapsed = time.perf_counter() - self.t0
        assert elapsed < self.budget, f"took {elapsed:.2f}s, budget {self.budget}s"


def three_ways(g, include):
    ev = CylinderEvent(include)
    return (brute_cylinder_prob(g, ev), prob_edges_in(g, include, exact=True), prob_cylinder_weighted(g, ev))


# ---- 1 -----------------------------------------------------------------------

@crit(1, "G1 exact edge probabilities by enumeration, determinants and recursion")
def test_c01_single_edges():
    clock = Clock(1.0)
    g = g1()
    assert three_ways(g, (0,)) == (F(8, 11),) * 3
    assert three_ways(g, (3,)) == (F(7, 11),) * 3
    clock.check()


@crit(1, "G1 exact edge probabilities by enumeration, determinants and recursion")
def test_c01_pair_is_4_over_11():
    clock = Clock(1.0)
    got = three_ways(g1(), (0, 3))
    clock.check()
    assert got == (F(4, 11),) * 3


# ---- 2 -----------------------------------------------------------------------

@crit(2, "G1 enumeration equals the eleven listed trees")
def test_c02_g1_enumeration():
    clock = Clock(1.0)
    listed = {tuple(int(c) - 1 for c in t) for t in G1_TREES_1BASED}
    got = enumerate_spanning_trees(g1()).trees
    assert len(got) == 11 and set(got) == listed
    clock.check()


# ---- 3 -----------------------------------------------------------------------

@crit(3, "T3 tree count, edge probability, star determinant and leaf probability")
def test_c03_t3_numbers():
    clock = Clock(5.0)
    g = generate_family("torus", 3)
    assert matrix_tree_count(g) == 11664
    assert all(prob_edges_in(g, [e], exact=True) == F(8, 18) for e in g.edge_ids)
    star = [t3_edge(x, "A") for x in "BCD"]
    assert prob_edges_in(g, star, exact=True) == F(312, 5832)
    assert degree_pmf(g, t3_vertex("A"), exact=True)[1] == F(4704, 11664)
    clock.check()


# ---- 4 -----------------------------------------------------------------------

T3_TABLE = [["5/8", "3/8", "1/2"], ["5/8", "3/8", "1/2"], ["1", "0", "1/2"]]
T4_TABLE = [
    ["56/90", "34/90", "40/90", "50/90"],
    ["50/90", "40/90", "42/90", "48/90"],
    ["56/90", "34/90", "40/90", "50/90"],
    ["1", "0", "34/90", "56/90"],
]


@crit(4, "T3 and T4 one-volt tables, rational solver exact and Fourier sum to 1e-9")
@pytest.mark.parametrize("n,table", [(3, T3_TABLE), (4, T4_TABLE)])
def test_c04_voltage_tables(n, table):
    clock = Clock(5.0)
    g = generate_family("torus", n)
    a, b = torus_vertex(n, 0, 0), torus_vertex(n, 1, 0)
    h = hitting_voltage(g, a, b, exact=True)
    top = torus_potential(n, 0, 0)
    for r, row in enumerate(table):
        j = n - 1 - r  # printed rows run top to bottom
        for i, want in enumerate(row):
            assert h[torus_vertex(n, i, j)] == F(want)
            assert abs(torus_potential(n, i, j) / top - float(F(want))) < 1e-9
    clock.check()


# ---- 5 -----------------------------------------------------------------------

@crit(5, "K_n has n^(n-2) spanning trees, n = 3..8")
def test_c05_cayley():
    clock = Clock(5.0)
    for n in range(3, 9):
        assert matrix_tree_count(generate_family("complete", n)) == n ** (n - 2)
    clock.check()


# ---- 6 -----------------------------------------------------------------------

@crit(6, "K_n unit-current potential (2/n, 0, 1/n, ...), n = 3..10")
def test_c06_kn_voltages():
    clock = Clock(2.0)
    for n in range(3, 11):
        phi = unit_current_potential(generate_family("complete", n), 0, 1, exact=True)
        assert phi.values == (F(2, n), F(0)) + (F(1, n),) * (n - 2)
    clock.check()


# ---- 7 -----------------------------------------------------------------------

C7 = "K_n degree law: exact n=4 value, n=12 within 5% of 1/e, moments within 0.5"


@crit(7, C7)
def test_c07_k4_leaf():
    clock = Clock(30.0)
    g = generate_family("complete", 4)
    trees = enumerate_spanning_trees(g).trees
    leaves = sum(1 for t in trees if sum(1 for e in t if 0 in (g.edge(e).u, g.edge(e).v)) == 1)
    assert kn_degree_pmf(4)[1] == F(9, 16) == F(leaves, len(trees))
    clock.check()


@crit(7, C7)
@pytest.mark.parametrize("k", [1, 2])
def test_c07_k12_point_mass_near_1_over_e(k):
    p = float(kn_degree_pmf(12)[k])
    assert abs(p - E_INV) <= 0.05 * E_INV, f"P({k}) = {p:.5f}, off by {abs(p - E_INV) / E_INV:.1%}"


@crit(7, C7)
@pytest.mark.parametrize("r", [1, 2])
def test_c07_k12_factorial_moment(r):
    m = float(falling_factorial_moment(kn_degree_pmf(12), r))
    assert abs(m - (r + 1)) < 0.5, f"E(D)_{r} = {m:.5f}"


@crit(7, C7)
def test_c07_trend():
    ns = range(4, 13)
    m1 = [falling_factorial_moment(kn_degree_pmf(n), 1) for n in ns]
    m2 = [falling_factorial_moment(kn_degree_pmf(n), 2) for n in ns]
    p1 = [kn_degree_pmf(n)[1] for n in ns]
    assert m1 == sorted(m1) and m2 == sorted(m2)
    assert p1 == sorted(p1, reverse=True)


# ---- 8 -----------------------------------------------------------------------

@crit(8, "negative correlation on 200 random graphs, exact")
def test_c08_negative_correlation():
    clock = Clock(60.0)
    pairs = 0
    for g in CORPUS:
        p = {e: prob_edges_in(g, [e], exact=True) for e in g.edge_ids}
        for e, f in itertools.combinations(g.edge_ids, 2):
            assert prob_edges_in(g, [e, f], exact=True) <= p[e] * p[f]
            pairs += 1
    assert len(CORPUS) == 200 and max(len(g.edges) for g in CORPUS) <= 8 and pairs > 0
    clock.check()


# ---- 9 -----------------------------------------------------------------------

def cylinder_events(ids, max_marked=4):
    for k in range(max_marked + 1):
        for marked in itertools.combinations(ids, k):
            for inside in itertools.product((True, False), repeat=k):
                yield CylinderEvent(
                    tuple(e for e, b in zip(marked, inside) if b),
                    tuple(e for e, b in zip(marked, inside) if not b),
                )


@crit(9, "determinant, enumeration and recursion agree on all cylinder events")
def test_c09_oracle_equivalence():
    clock = Clock(60.0)
    for g in CORPUS:
        for ev in cylinder_events(g.edge_ids):
            a = prob_cylinder(g, ev, exact=True)
            assert a == brute_cylinder_prob(g, ev) == prob_cylinder_weighted(g, ev), (g, ev)
    clock.check()


# ---- 10 ----------------------------------------------------------------------

@crit(10, "Rayleigh monotonicity on 500 random triples")
def test_c10_rayleigh():
    clock = Clock(10.0)
    rng = random.Random(10)
    graphs = graph_corpus(500, 1010, max_vertices=7, max_edges=10, loops=True, weights=True)
    for g in graphs:
        n = g.vertex_count
        a, b = rng.sample(range(n), 2)
        u, v = rng.randrange(n), rng.randrange(n)
        w = rng.choice(["1", "2", "1/3"])
        bigger = build_graph(n, [(e.u, e.v, e.weight) for e in g.edges] + [(u, v, w)])
        assert effective_resistance(bigger, a, b, exact=True) <= effective_resistance(g, a, b, exact=True) + F(1, 10**12)
    clock.check()


# ---- 11 ----------------------------------------------------------------------

C11 = "sampler: G1 census uniform, golden seeds stable, walk trace reproduced"
GOLDEN_G1 = {0: (-1, 1, 2, 5, 4), 42: (-1, 0, 1, 5, 3), 2**64 - 1: (-1, 0, 1, 2, 3)}


@crit(11, C11)
def test_c11_census_chi_square():
    clock = Clock(30.0)
    trials = 110_000
    census = sample_tree_census(g1(), trials, 31)
    keys = [tree_key(t) for t in enumerate_spanning_trees(g1()).trees]
    assert set(census) == set(keys)
    stat = stats.chisquare([census[k] for k in keys]).statistic
    assert stat < stats.chi2.ppf(0.999, 10)
    clock.check()


@crit(11, C11)
def test_c11_golden_seeds():
    for seed, want in GOLDEN_G1.items():
        assert aldous_broder(g1(), 0, seed).parent_edge == want


@crit(11, C11)
def test_c11_walk_trace():
    t = tree_from_walk(fig2(), [FIG2_LABELS.index(c) for c in "ABFBCDAE"])
    assert {FIG2_LABELS[a] + FIG2_LABELS[b] for a, b in t.arrows()} == {"BA", "FB", "CB", "DC", "EA"}


# ---- 12 ----------------------------------------------------------------------

C12 = "tree moments: figure count, Galton-Watson, incipient cluster, exact star moments"
R = RootedTree.from_parens
SAMPLES = 100_000


@crit(12, C12)
def test_c12_figure_count():
    assert tree_map_count(R("(()())()(())"), R("(()())()")) == 4


@crit(12, C12)
@pytest.mark.parametrize("tree", ["(())", "()()()"])
def test_c12_gw_moment(tree):
    est = gw_tree_moment(R(tree), SAMPLES, 1201)
    assert est.within(1.0), est


@crit(12, C12)
@pytest.mark.parametrize("tree", ["()", "(())", "()()()"])
def test_c12_incipient_moment(tree):
    t = R(tree)
    est = incipient_tree_moment(t, 3, SAMPLES, 1202)
    assert est.within(t.size), est


@crit(12, C12)
def test_c12_ust_star_moments():
    cases = [(generate_family("torus", 3), t3_vertex("A")), (generate_family("complete", 6), 0), (g1(), 0)]
    for g, v in cases:
        pmf = degree_pmf(g, v, exact=True)
        for r in (1, 2, 3):
            assert ust_tree_moment(g, v, RootedTree.star(r)) == falling_factorial_moment(pmf, r)
    assert ust_tree_moment(generate_family("torus", 3), 0, R("()")) == F(16, 9)


# ---- 13 ----------------------------------------------------------------------

@crit(13, "entropy: integral 1.16624 +- 1e-4, n=100 within 1e-3, n=3 is ln(11664)/9")
def test_c13_entropy():
    clock = Clock(20.0)
    h = spanning_tree_entropy_integral(1024)
    assert abs(h - 1.16624) <= 1e-4
    assert abs(spanning_tree_entropy_finite(100) - h) <= 1e-3
    assert spanning_tree_entropy_finite(3) == pytest.approx(math.log(11664) / 9, rel=1e-14)
    clock.check()


# ---- 14 ----------------------------------------------------------------------

def all_tilings(cells):
    cells = frozenset(cells)
    if not cells:
        return [frozenset()]
    first = min(cells)
    x, y = first
    out = []
    for nb in ((x + 1, y), (x, y + 1)):
        if nb in cells:
            pair = tuple(sorted((first, nb)))
            out.extend(rest | {pair} for rest in all_tilings(cells - {first, nb}))
    return out


@crit(14, "dominoes: grid(2) trees give all 4 tilings, grid(3) map injective on 192 trees")
def test_c14_dominoes():
    clock = Clock(20.0)
    from ust.limits import board_cells

    small = [temperley_matching(2, t).key() for t in enumerate_spanning_trees(generate_family("grid", 2)).trees]
    assert len(small) == 4 and set(small) == set(all_tilings(board_cells(2)))
    trees3 = enumerate_spanning_trees(generate_family("grid", 3)).trees
    assert len(trees3) == matrix_tree_count(generate_family("grid", 3)) == 192
    assert len({temperley_matching(3, t).key() for t in trees3}) == 192
    clock.check()
