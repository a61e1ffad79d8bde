import math

import pytest
from hypothesis import given

from minorpart.decomp import RootedForest
from minorpart.errors import InputError
from minorpart.generators import complete, cycle, path, u_graph
from minorpart.graph import (Graph, ball, bfs_distances, closure_of_rooted_forest, components,
                             contract_set, is_geodesic, join, quotient, shortest_path)
from oracles import adjacency, components as oracle_components
from strategies import graphs


def test_bfs_path():
    assert list(bfs_distances(path(5), 0)) == [0, 1, 2, 3, 4]


def test_bfs_disconnected():
    d = bfs_distances(Graph(4, [(0, 1), (2, 3)]), 0)
    assert d[1] == 1 and d[2] == math.inf and d[3] == math.inf


def test_bfs_complete():
    d = bfs_distances(complete(4), 2)
    assert [d[v] for v in (0, 1, 3)] == [1, 1, 1] and d[2] == 0


def test_bfs_rejects_bad_source():
    with pytest.raises(InputError):
        bfs_distances(path(3), 7)


def test_is_geodesic_on_c5():
    c5 = cycle(5)
    assert is_geodesic(c5, (0, 1, 2))
    assert not is_geodesic(c5, (0, 1, 2, 3))


def test_single_vertex_geodesic():
    assert is_geodesic(path(3), (1,))


def test_ball_examples():
    assert ball(path(5), 2, 1) == {1, 2, 3}
    assert ball(cycle(6), 0, 2) == {4, 5, 0, 1, 2}
    assert ball(complete(4), 3, 0) == {3}


def test_components_examples():
    comps = components(u_graph(2, 2))
    assert sorted(len(c) for c in comps) == [3, 3]
    assert components(Graph(1)) == [{0}]
    assert components(Graph(0)) == []


def test_join_examples():
    assert join(complete(2), Graph(0)) == complete(2)
    assert join(Graph(1), Graph(1)) == complete(2)
    j = join(complete(2), u_graph(1, 3))
    assert (j.n, j.m) == (5, 7)


def test_closure_examples():
    assert closure_of_rooted_forest(RootedForest((None, 0, 1))) == complete(3)
    star = closure_of_rooted_forest(RootedForest((None, 0, 0, 0)))
    assert star.edges == ((0, 1), (0, 2), (0, 3))
    assert closure_of_rooted_forest(RootedForest((None, None, None))).m == 0


def test_quotient_examples():
    assert quotient(cycle(4), [{0, 1}, {2, 3}]) == complete(2)
    c5 = cycle(5)
    assert quotient(c5, [{v} for v in range(5)]) == c5
    assert quotient(cycle(6), [{0, 1, 2}, {3, 4, 5}]) == complete(2)


def test_quotient_rejects_overlap():
    with pytest.raises(InputError):
        quotient(path(3), [{0, 1}, {1, 2}])


def test_contract_examples():
    g, remap = contract_set(path(3), {0, 1})
    assert g == complete(2) and remap[0] == remap[1]
    assert contract_set(cycle(5), {0, 1})[0] == cycle(4)
    assert contract_set(complete(4), {0, 1, 2})[0] == complete(2)


def test_contract_needs_connected_set():
    with pytest.raises(InputError):
        contract_set(path(3), {0, 2})


def test_graph_rejects_loops_and_range():
    with pytest.raises(InputError):
        Graph(2, [(1, 1)])
    with pytest.raises(InputError):
        Graph(2, [(0, 2)])


@given(graphs())
def test_bfs_matches_edge_relaxation(g):
    nb = adjacency(g)
    for s in range(g.n):
        d = bfs_distances(g, s)
        for u, v in g.edges:
            assert abs(d[u] - d[v]) <= 1 or (d[u] == d[v] == math.inf)
        for v in range(g.n):
            if v != s and d[v] != math.inf:
                assert any(d[w] == d[v] - 1 for w in nb[v])


@given(graphs(max_n=8))
def test_components_partition(g):
    ours = sorted(sorted(c) for c in components(g))
    theirs = sorted(sorted(c) for c in oracle_components(adjacency(g), range(g.n)))
    assert ours == theirs


@given(graphs(min_n=1, max_n=8))
def test_shortest_paths_are_geodesics(g):
    for v in range(g.n):
        p = shortest_path(g, 0, v)
        if p is not None:
            assert is_geodesic(g, p)
            assert len(p) - 1 == bfs_distances(g, 0)[v]


@given(graphs(max_n=7))
def test_balls_grow_with_radius(g):
    for v in range(g.n):
        prev = {v}
        for r in range(4):
            cur = ball(g, v, r)
            assert prev <= cur
            assert cur == {w for w in range(g.n) if bfs_distances(g, v)[w] <= r}
            prev = cur
