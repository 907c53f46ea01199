import pytest

from nbrw import BadParamsError, UnknownVertexError
from nbrw.sources import FreeGroupSource, GridZ2Source, RegularTreeSource


def test_grid_neighbors():
    grid = GridZ2Source()
    items = dict(grid.neighbor_items("0,0"))
    assert set(items) == {"1,0", "-1,0", "0,1", "0,-1"}
    assert all(m == 1 for m in items.values())
    assert grid.degree("3,-7") == 4
    assert grid.degree_bound == 4


def test_grid_label_validation():
    grid = GridZ2Source()
    for bad in ("", "1", "1,2,3", "a,b", "1, 2", "01,0"):
        with pytest.raises(UnknownVertexError):
            grid.neighbor_items(bad)


def test_tree_neighbors_and_labels():
    tree = RegularTreeSource(3)
    assert tree.root == "o"
    root_nbrs = [v for v, _ in tree.neighbor_items("o")]
    assert root_nbrs == ["o.0", "o.1", "o.2"]
    deep = [v for v, _ in tree.neighbor_items("o.0.1")]
    assert deep == ["o.0", "o.0.1.0", "o.0.1.1"]
    assert tree.degree("o.0.1") == 3
    for bad in ("", "o.", "o.3", "o.0.2", "o.0.01", "x"):
        with pytest.raises(UnknownVertexError):
            tree.neighbor_items(bad)
    with pytest.raises(BadParamsError):
        RegularTreeSource(1)


def test_free_group_neighbors():
    fg = FreeGroupSource(2)
    nbrs = [v for v, _ in fg.neighbor_items("1")]
    assert sorted(nbrs) == ["A", "B", "a", "b"]
    # multiplying by the inverse of the last letter cancels it
    nbrs_ab = [v for v, _ in fg.neighbor_items("ab")]
    assert "a" in nbrs_ab and "abb" in nbrs_ab and "aba" in nbrs_ab
    assert all(len(w) in (1, 3) for w in nbrs_ab)
    assert fg.degree("1") == 4


def test_free_group_label_validation():
    fg = FreeGroupSource(2)
    for bad in ("", "aA", "Bb", "ac", "1a"):
        with pytest.raises(UnknownVertexError):
            fg.neighbor_items(bad)
    with pytest.raises(BadParamsError):
        FreeGroupSource(0)
    with pytest.raises(BadParamsError):
        FreeGroupSource(9)


@pytest.mark.parametrize("source", [
    GridZ2Source(), RegularTreeSource(4), FreeGroupSource(2),
])
def test_neighbor_relation_is_symmetric(source):
    """If u lists v with multiplicity m, then v lists u with the same m."""
    frontier = [source.root]
    seen = {source.root}
    for _ in range(2):
        nxt = []
        for u in frontier:
            for v, m in source.neighbor_items(u):
                back = dict(source.neighbor_items(v))
                assert back.get(u) == m
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt


def test_free_group_sphere_growth():
    fg = FreeGroupSource(2)
    frontier, seen = {fg.root}, {fg.root}
    sizes = []
    for _ in range(5):
        nxt = set()
        for u in frontier:
            for v, _ in fg.neighbor_items(u):
                if v not in seen:
                    nxt.add(v)
        seen |= nxt
        frontier = nxt
        sizes.append(len(nxt))
    assert sizes == [4 * 3 ** n for n in range(5)]
