import pytest

from ust.graph import GraphError, generate_family
from ust.limits import DominoTiling, board_cells, temperley_matching
from ust.oracle import enumerate_spanning_trees


def all_tilings(cells):
    """Every perfect matching of a set of grid cells into adjacent pairs."""
    cells = frozenset(cells)
    if not cells:
        return [frozenset()]
    first = min(cells)
    out = []
    x, y = first
    for nb in ((x + 1, y), (x, y + 1)):
        if nb in cells:
            pair = tuple(sorted((first, nb)))
            for rest in all_tilings(cells - {first, nb}):
                out.append(rest | {pair})
    return out


def trees(m):
    return enumerate_spanning_trees(generate_family("grid", m)).trees


def test_enumerator_sanity():
    assert len(all_tilings({(0, 0), (1, 0), (0, 1), (1, 1)})) == 2
    assert len(all_tilings(board_cells(2))) == 4


def test_m2_bijection():
    ts = [temperley_matching(2, t).key() for t in trees(2)]
    assert len(ts) == 4 and len(set(ts)) == 4
    assert set(ts) == set(all_tilings(board_cells(2)))


def test_m3_injective_and_exhaustive():
    ts = {temperley_matching(3, t).key() for t in trees(3)}
    assert len(ts) == 192
    assert ts == set(all_tilings(board_cells(3)))


def test_outputs_validate():
    for t in trees(3)[:40]:
        tiling = temperley_matching(3, t)
        tiling.validate()
        assert len(tiling.dominoes) * 2 == len(tiling.board)


def test_known_tiling():
    tiling = temperley_matching(2, [0, 2, 3])
    assert tiling.dominoes == (((0, 1), (1, 1)), ((0, 2), (1, 2)), ((1, 0), (2, 0)), ((2, 1), (2, 2)))


def test_validator_rejects():
    with pytest.raises(AssertionError):
        DominoTiling(2, (((0, 1), (1, 1)),)).validate()
    with pytest.raises(AssertionError):
        DominoTiling(2, (((0, 1), (1, 2)), ((0, 2), (1, 1)), ((1, 0), (2, 0)), ((2, 1), (2, 2)))).validate()


def test_rejects_non_tree():
    with pytest.raises(GraphError):
        temperley_matching(2, [0, 1])
    with pytest.raises(GraphError):
        temperley_matching(1, [])


def test_m4_sample():
    from ust.sampler import aldous_broder

    g = generate_family("grid", 4)
    seen = set()
    for s in range(30):
        t = aldous_broder(g, 0, s)
        seen.add(temperley_matching(4, t.edges).key())
    assert len(seen) > 1
