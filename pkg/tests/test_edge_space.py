from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nbrw import (
    analyze_structure,
    build_kernel,
    butterfly,
    check_reversal_symmetry,
    complete,
    complete_bipartite,
    cycle,
    oriented_edges,
    petersen,
    random_multigraph,
    solg_distance,
    turnaround_bound,
)


def test_reversal_is_fixed_point_free_involution(corpus_graph):
    space = oriented_edges(corpus_graph)
    for e in range(space.num_edges):
        assert space.reverse(e) != e
        assert space.reverse(space.reverse(e)) == e
        assert space.tails[e] == space.heads[space.reverse(e)]


def test_out_edges_partition(corpus_graph):
    g = corpus_graph
    space = oriented_edges(g)
    assert space.num_edges == g.num_oriented_edges
    total = 0
    for vi in range(g.num_vertices):
        out = space.out_edges[vi]
        assert len(out) == g.degree(g.labels[vi])
        assert all(space.tails[e] == vi for e in out)
        total += len(out)
    assert total == space.num_edges


def test_successors_exclude_reversal(corpus_graph):
    space = oriented_edges(corpus_graph)
    g = corpus_graph
    for e in range(space.num_edges):
        succ = space.successors(e)
        assert space.reverse(e) not in succ
        assert len(succ) == g.degree(g.labels[space.heads[e]]) - 1
        for f in succ:
            assert space.tails[f] == space.heads[e]


def test_predecessors_mirror_successors(corpus_graph):
    space = oriented_edges(corpus_graph)
    for e in range(space.num_edges):
        for f in space.successors(e):
            assert e in space.predecessors(f)


def test_kernel_rows_and_columns(corpus_graph):
    kernel = build_kernel(corpus_graph)
    assert kernel.matrix.is_row_stochastic()
    assert all(c == Fraction(1) for c in kernel.matrix.column_sums())


def test_kernel_entry_value():
    kernel = build_kernel(petersen())
    space = kernel.space
    e = 0
    succ = space.successors(e)
    assert [kernel.matrix.entry(e, f) for f in succ] == [Fraction(1, 2)] * 2


def test_cycle_graph_splits_into_two_classes():
    for n in (3, 4, 6, 9):
        structure = analyze_structure(build_kernel(cycle(n)))
        assert not structure.irreducible
        assert structure.num_essential == 2
        assert structure.period is None
        assert list(structure.component_periods) == [n, n]


@pytest.mark.parametrize("maker,period", [
    (lambda: complete(4), 1),
    (lambda: petersen(), 1),
    (lambda: complete_bipartite(3, 3), 2),
    (lambda: butterfly(), 3),
])
def test_periods(maker, period):
    structure = analyze_structure(build_kernel(maker()))
    assert structure.irreducible
    assert structure.period == period


def test_turnaround_bounds():
    assert turnaround_bound(build_kernel(butterfly())) == 8
    # u->v, v->w, w->z, z->v, v->u is the shortest return to a reversal
    assert turnaround_bound(build_kernel(complete(4))) == 4
    assert turnaround_bound(build_kernel(cycle(6))) is None


def test_solg_distance_symmetric_under_reversal():
    kernel = build_kernel(butterfly())
    space = kernel.space
    for e in range(0, space.num_edges, 3):
        assert solg_distance(space, e, e) == 0
        for f in range(space.num_edges):
            d = solg_distance(space, e, f)
            assert d == solg_distance(space, f, e)


def test_reversal_symmetry_exact(corpus_graph):
    rep = check_reversal_symmetry(build_kernel(corpus_graph), 6)
    assert rep.ok, rep.violations[:3]
    assert rep.max_violation == 0


@given(seed=st.integers(0, 5000))
def test_structure_on_random_graphs(seed):
    """Seeded corpus: kernel is doubly stochastic and the reversal pairing
    stays consistent after shuffling through the generator."""
    g = random_multigraph(5 + seed % 8, seed)
    kernel = build_kernel(g)
    assert kernel.matrix.is_row_stochastic()
    assert all(c == Fraction(1) for c in kernel.matrix.column_sums())
    space = kernel.space
    for e in range(space.num_edges):
        assert space.reverse(space.reverse(e)) == e
