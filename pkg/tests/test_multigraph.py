import pytest
from hypothesis import given
from hypothesis import strategies as st

from nbrw import (
    DegreeError,
    DisconnectedError,
    ParseError,
    UnknownVertexError,
    ball,
    butterfly,
    complete,
    complete_bipartite,
    contains_cycle,
    cycle,
    distance,
    is_bipartite,
    load_multigraph,
    make_multigraph,
    petersen,
    random_multigraph,
    small_cycle_radius,
)
from nbrw.sources import GridZ2Source, RegularTreeSource


def test_parse_basic():
    g = load_multigraph("""
    # a triangle with a doubled edge and a loop
    edge a b 2
    edge b c
    edge c a
    loop c
    """)
    assert g.num_vertices == 3
    assert g.degree("a") == 3
    assert g.degree("b") == 3
    assert g.degree("c") == 4
    assert g.num_oriented_edges == 10
    assert g.multiplicity("a", "b") == 2
    assert g.multiplicity("c", "c") == 2
    assert g.loops_at("c") == 1


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 2"):
        load_multigraph("edge a b\nedge a\n")
    with pytest.raises(ParseError, match="line 1"):
        load_multigraph("edge a b 0\n")
    with pytest.raises(ParseError):
        load_multigraph("vertex a b\n")


def test_min_degree_enforced():
    with pytest.raises(DegreeError):
        load_multigraph("edge a b\nedge b c\n")
    with pytest.raises(DegreeError):
        make_multigraph(["a", "b"], {("a", "b"): 1})


def test_connectivity_enforced():
    with pytest.raises(DisconnectedError):
        make_multigraph(["a", "b", "c", "d"],
                        {("a", "b"): 2, ("c", "d"): 2})


def test_loop_counts_twice_in_degree():
    g = make_multigraph(["v"], {}, loops={"v": 1})
    assert g.degree("v") == 2
    assert g.num_oriented_edges == 2


def test_named_graph_shapes():
    assert complete(4).num_oriented_edges == 12
    assert petersen().num_vertices == 10
    assert petersen().regular_degree() == 3
    assert complete_bipartite(3, 3).regular_degree() == 3
    b = butterfly()
    assert b.num_vertices == 5
    assert b.degree("x") == 4
    assert sorted(b.degrees()) == [2, 2, 2, 2, 4]
    assert cycle(6).is_cycle_graph()
    assert not petersen().is_cycle_graph()


def test_distance():
    g = petersen()
    assert distance(g, "o0", "o0") == 0
    assert distance(g, "o0", "o1") == 1
    assert distance(g, "o0", "i2") == 2
    with pytest.raises(UnknownVertexError):
        distance(g, "o0", "zz")


@pytest.mark.parametrize("maker,expected", [
    (lambda: cycle(5), False),
    (lambda: cycle(6), True),
    (lambda: complete(4), False),
    (lambda: complete_bipartite(3, 3), True),
    (lambda: petersen(), False),
])
def test_bipartite_verdicts(maker, expected):
    assert bool(is_bipartite(maker())) is expected


def test_bipartite_witnesses_are_checkable(corpus_graph):
    """Either a 2-coloring that separates every edge, or a closed walk of
    odd length whose consecutive vertices are adjacent."""
    g = corpus_graph
    rep = is_bipartite(g)
    if rep.bipartite:
        col = rep.coloring
        for (u, v) in g.edge_mult:
            assert col[g.labels[u]] != col[g.labels[v]]
        assert not g.loops
    else:
        walk = rep.odd_closed_walk
        assert walk[0] == walk[-1]
        assert (len(walk) - 1) % 2 == 1
        for a, b in zip(walk, walk[1:]):
            assert g.multiplicity(a, b) > 0


def test_ball_finite_graph():
    g = petersen()
    view = ball(g, "o0", 1)
    assert view.graph.num_vertices == 4
    assert view.boundary == {"o1", "o4", "i0"}
    assert view.true_degrees["o1"] == 3
    # boundary vertices keep their ambient degree even though the induced
    # subgraph sees fewer edges
    assert view.graph.degree("o1") < 3


def test_ball_source_sizes():
    grid = GridZ2Source()
    for r in range(5):
        view = ball(grid, "0,0", r)
        assert view.graph.num_vertices == 2 * r * r + 2 * r + 1
    tree = RegularTreeSource(3)
    view = ball(tree, "o", 3)
    assert view.graph.num_vertices == 1 + 3 + 6 + 12


def test_ball_budget():
    from nbrw import BudgetExceededError
    with pytest.raises(BudgetExceededError):
        ball(GridZ2Source(), "0,0", 50, max_vertices=100)


def test_cycle_detection():
    assert contains_cycle(cycle(3))
    assert contains_cycle(make_multigraph(["a", "b"], {("a", "b"): 2}))
    assert contains_cycle(make_multigraph(["v"], {}, loops={"v": 1}))


@pytest.mark.parametrize("maker,expected", [
    (lambda: complete(4), 1),
    (lambda: cycle(6), 3),
    (lambda: cycle(7), 3),
    (lambda: butterfly(), 1),
    (lambda: make_multigraph(["v"], {}, loops={"v": 1}), 0),
])
def test_small_cycle_radius(maker, expected):
    assert small_cycle_radius(maker()) == expected


@given(seed=st.integers(0, 10_000), n=st.integers(4, 12))
def test_random_graphs_well_formed(seed, n):
    g = random_multigraph(n, seed)
    assert g.num_vertices == n
    assert g.min_degree() >= 2
    assert max(g.degrees()) <= 5
    assert sum(g.degrees()) == g.num_oriented_edges


def test_random_graphs_deterministic():
    a = random_multigraph(9, 42)
    b = random_multigraph(9, 42)
    assert a.edge_mult == b.edge_mult and a.loops == b.loops
