import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from ust.graph import build_graph, generate_family, is_connected, torus_vertex

DATA = Path(__file__).parent / "data"

# G1: vertices A..E = 0..4; edge ids 0..5 are AB, BC, CD, DE, AE, AD
G1_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 3)]

# the eleven spanning trees of G1, written with 1-based edge labels
G1_TREES_1BASED = [
    "1234", "1235", "1245", "1246", "1256", "1345",
    "1346", "1356", "2345", "2346", "2356",
]

# six-vertex cubic graph used for the walk-trace example, vertices A..F
FIG2_LABELS = "ABCDEF"
FIG2_EDGES = ["AB", "AD", "BC", "CD", "AE", "DE", "EF", "BF", "CF"]

# labelled vertices of the 3x3 torus: A in the middle, B left, C above, D right, E below
T3 = {"A": (1, 1), "B": (0, 1), "C": (1, 2), "D": (2, 1), "E": (1, 0)}


def g1():
    return build_graph(5, G1_EDGES)


def fig2():
    idx = FIG2_LABELS.index
    return build_graph(6, [(idx(a), idx(b)) for a, b in FIG2_EDGES])


def t3_vertex(label):
    return torus_vertex(3, *T3[label])


def edge_between(g, u, v):
    found = [e.id for e in g.edges if {e.u, e.v} == {u, v}]
    assert len(found) == 1, (u, v, found)
    return found[0]


def t3_edge(a, b):
    g = generate_family("torus", 3)
    return edge_between(g, t3_vertex(a), t3_vertex(b))


def random_connected_graph(rng, max_vertices=6, max_edges=8, loops=False, weights=False):
    """Random spanning tree plus extra edges; parallel edges allowed."""
    n = rng.randint(2, max_vertices)
    while n - 1 > max_edges:
        n -= 1
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    room = max_edges - len(edges)
    extra = rng.randint(room // 2, room)
    for _ in range(extra):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v and not loops:
            continue
        edges.append((u, v))
    rng.shuffle(edges)
    if weights:
        edges = [(u, v, rng.choice(["1", "2", "1/2", "3", "2/3"])) for u, v in edges]
    g = build_graph(n, edges)
    assert is_connected(g)
    return g


def graph_corpus(count, seed, **kw):
    rng = random.Random(seed)
    return [random_connected_graph(rng, **kw) for _ in range(count)]


@st.composite
def connected_graphs(draw, max_vertices=6, max_edges=8, loops=False, weights=False):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected_graph(random.Random(seed), max_vertices, max_edges, loops, weights)


@pytest.fixture
def G1():
    return g1()


@pytest.fixture
def FIG2():
    return fig2()


@pytest.fixture
def T3G():
    return generate_family("torus", 3)


# ---- acceptance report: one PASS/FAIL line per criterion -------------------

_ACCEPTANCE: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        num, title = mark.args
        entry = _ACCEPTANCE.setdefault(num, {"title": title, "checks": []})
        entry["checks"].append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        entry = _ACCEPTANCE[num]
        bad = [name for name, out in entry["checks"] if out != "passed"]
        status = "FAIL" if bad else "PASS"
        line = f"criterion {num:2d} {status}  {entry['title']}"
        if bad:
            line += "  [failing: " + ", ".join(bad) + "]"
        tr.write_line(line)
