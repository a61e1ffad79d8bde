import pytest
from hypothesis import given, strategies as st

from minorpart.errors import InputError
from minorpart.generators import (complete_dary_forest_parents, family, random_graph,
                                  random_tree, u_graph, u_graph_size)
from minorpart.graph import is_connected
from oracles import treedepth_rec


def test_u_graph_small():
    assert u_graph(0, 5).n == 0
    g = u_graph(1, 3)
    assert (g.n, g.m) == (3, 0)
    g = u_graph(2, 2)
    assert (g.n, g.m) == (6, 4)
    assert g.edges == ((0, 1), (0, 2), (3, 4), (3, 5))


def test_families():
    g = family("cycle", 5)
    assert (g.n, g.m) == (5, 5)
    g = family("grid", 3, 3)
    assert (g.n, g.m) == (9, 12)
    g = family("complete", 4)
    assert (g.n, g.m) == (4, 6)
    assert family("star", 3).m == 3
    assert family("binary_tree_closure", 2).m == 2


def test_family_errors():
    with pytest.raises(InputError):
        family("petersen", 10)
    with pytest.raises(InputError):
        family("grid", 3)
    with pytest.raises(InputError):
        family("path", 0)


def test_random_graph_extremes():
    assert random_graph(5, 0.0, 1).m == 0
    assert random_graph(5, 1.0, 1).m == 10


def test_random_graph_deterministic():
    assert random_graph(8, 0.3, 42) == random_graph(8, 0.3, 42)
    assert random_graph(8, 0.3, 42) != random_graph(8, 0.3, 43)


def test_random_graph_bad_p():
    with pytest.raises(InputError):
        random_graph(4, 1.5, 0)


@given(st.integers(1, 3), st.integers(1, 3))
def test_u_graph_size_and_treedepth(h, d):
    g = u_graph(h, d)
    assert g.n == u_graph_size(h, d) == len(complete_dary_forest_parents(h, d))
    if g.n <= 13:
        assert treedepth_rec(g) == h


@given(st.integers(1, 15), st.integers(0, 1000))
def test_random_tree_is_tree(n, seed):
    g = random_tree(n, seed)
    assert g.m == n - 1 and is_connected(g)
