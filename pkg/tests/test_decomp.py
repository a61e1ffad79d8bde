import pytest
from hypothesis import assume, given, strategies as st

from minorpart.decomp import (DisjointFamily, HittingBags, RootedForest, TreeDecomposition,
                              capture_interfaces, check_capture, check_helly,
                              check_tree_decomposition, closure_contains, exact_treedepth,
                              exact_treewidth, helly_hit, is_natural, make_natural, mark_tree,
                              treewidth_bb)
from minorpart.errors import BudgetExceeded, InputError, VerificationError
from minorpart.generators import complete, cycle, grid, path, random_tree, u_graph
from minorpart.graph import Graph, is_connected, shortest_path
from oracles import treedepth_rec, treewidth_by_orders
from strategies import graphs


def path_decomposition(n):
    """Bags {i, i+1} along a path of n-1 nodes."""
    return TreeDecomposition(path(n - 1), tuple(frozenset({i, i + 1}) for i in range(n - 1)))


def test_treewidth_examples():
    assert exact_treewidth(random_tree(9, 3))[0] == 1
    assert exact_treewidth(cycle(5))[0] == 2
    assert exact_treewidth(complete(5))[0] == 4


def test_grid_treewidth():
    # frozen from the plain branch-and-bound oracle
    assert treewidth_bb(grid(3, 3)) == 3
    w, td = exact_treewidth(grid(3, 3))
    assert w == 3 and td.width == 3
    check_tree_decomposition(grid(3, 3), td)


def test_treewidth_budget():
    with pytest.raises(BudgetExceeded):
        exact_treewidth(path(5), budget_n=4)


def test_treedepth_examples():
    assert exact_treedepth(complete(4))[0] == 4
    d, forest = exact_treedepth(path(3))
    assert d == 2 and forest.parent[1] is None
    assert exact_treedepth(u_graph(2, 3))[0] == 2
    assert exact_treedepth(Graph(0))[0] == 0


@given(graphs(max_n=6))
def test_treewidth_matches_orders(g):
    w, td = exact_treewidth(g)
    assert w == treewidth_by_orders(g) == treewidth_bb(g)
    check_tree_decomposition(g, td)
    assert td.width == w


@given(graphs(max_n=8))
def test_treedepth_matches_recursion(g):
    d, forest = exact_treedepth(g)
    assert d == treedepth_rec(g)
    assert forest.height() == d and closure_contains(g, forest)


def test_check_tree_decomposition_failures():
    with pytest.raises(VerificationError):
        check_tree_decomposition(path(3), TreeDecomposition(Graph(1), (frozenset({0, 1}),)))
    bad = TreeDecomposition(path(3), (frozenset({0, 1}), frozenset({1, 2}), frozenset({0})))
    with pytest.raises(VerificationError):
        check_tree_decomposition(path(3), bad)


def test_natural_unchanged_cases():
    td = path_decomposition(3)
    assert is_natural(path(3), td)
    assert make_natural(path(3), td) == td
    single = TreeDecomposition(Graph(1), (frozenset(range(5)),))
    assert make_natural(cycle(5), single) == single


def bowtie():
    return Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def test_bowtie_made_natural():
    g = bowtie()
    # the side {0,1},{0,1,3,4} misses the cut vertex 2
    td = TreeDecomposition(path(3), (frozenset({0, 1}), frozenset({0, 1, 3, 4}), frozenset(range(5))))
    check_tree_decomposition(g, td)
    assert not is_natural(g, td)
    out = make_natural(g, td)
    check_tree_decomposition(g, out)
    assert is_natural(g, out)
    assert out.width <= td.width


def test_make_natural_needs_connected():
    with pytest.raises(InputError):
        make_natural(Graph(2), TreeDecomposition(Graph(1), (frozenset({0, 1}),)))


@given(graphs(min_n=1, max_n=7, connected=True))
def test_make_natural_property(g):
    _, td = exact_treewidth(g)
    out = make_natural(g, td)
    check_tree_decomposition(g, out)
    assert is_natural(g, out)
    assert out.width <= td.width


def test_helly_disjoint_edges():
    g = path(6)
    fam = [frozenset(e) for e in g.edges]
    out = helly_hit(g, path_decomposition(6), fam, 2)
    assert isinstance(out, DisjointFamily) and len(out.members) == 2
    assert not out.members[0] & out.members[1]


def test_helly_hits_subpaths_through_3():
    g = path(6)
    td = path_decomposition(6)
    fam = [frozenset(range(a, b + 1)) for a in range(4) for b in range(3, 6) if a <= 3 <= b]
    out = helly_hit(g, td, fam, 2)
    assert isinstance(out, HittingBags) and len(out.nodes) == 1
    bag = td.bags[out.nodes[0]]
    assert 3 in bag and all(m & bag for m in fam)


def test_helly_empty_family():
    out = helly_hit(path(6), path_decomposition(6), [], 3)
    assert isinstance(out, HittingBags) and out.nodes == ()


def test_helly_rejects_disconnected_member():
    with pytest.raises(InputError):
        helly_hit(path(4), path_decomposition(4), [frozenset({0, 2})], 2)


@given(graphs(min_n=2, max_n=8, connected=True), st.data())
def test_helly_dichotomy(g, data):
    _, td = exact_treewidth(g)
    fam = []
    for _ in range(data.draw(st.integers(0, 6))):
        u = data.draw(st.integers(0, g.n - 1))
        v = data.draw(st.integers(0, g.n - 1))
        fam.append(frozenset(shortest_path(g, u, v)))
    d = data.draw(st.integers(1, 4))
    out = helly_hit(g, td, fam, d)
    check_helly(g, td, fam, d, out)
    if isinstance(out, DisjointFamily):
        assert all(m in fam for m in out.members)
    else:
        hit = set().union(*(td.bags[x] for x in out.nodes)) if out.nodes else set()
        assert len(out.nodes) <= d - 1 and all(m & hit for m in fam)


def test_capture_single_bag_of_p7():
    g = path(7)
    td = path_decomposition(7)
    x, marked = capture_interfaces(g, td, [3])
    assert x == {3, 4} and marked == (3,)
    check_capture(g, td, [3], x, marked, natural=True)


def test_capture_two_bags():
    g = path(7)
    td = path_decomposition(7)
    x, marked = capture_interfaces(g, td, [1, 4])
    assert len(marked) <= 3
    check_capture(g, td, [1, 4], x, marked)


def test_capture_star_decomposition():
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    tree = Graph(4, [(0, 1), (0, 2), (0, 3)])
    td = TreeDecomposition(tree, (frozenset({0}), frozenset({0, 1, 2}), frozenset({0, 3}),
                                  frozenset({0, 4})))
    check_tree_decomposition(g, td)
    x, marked = capture_interfaces(g, td, [2, 3])
    assert len(marked) <= 3
    check_capture(g, td, [2, 3], x, marked)


def tree_components_touch(forest, marked):
    """Largest number of marked nodes adjacent to one component of the tree minus marked."""
    adj = {v: set() for v in range(forest.n)}
    for v, p in enumerate(forest.parent):
        if p is not None:
            adj[v].add(p)
            adj[p].add(v)
    left = set(range(forest.n)) - set(marked)
    worst = 0
    while left:
        comp = {left.pop()}
        stack = list(comp)
        while stack:
            for w in adj[stack.pop()]:
                if w in left:
                    left.discard(w)
                    comp.add(w)
                    stack.append(w)
        worst = max(worst, len({w for v in comp for w in adj[v]} & set(marked)))
    return worst


def test_mark_tree_examples():
    chain = RootedForest((None, 0, 1, 2))
    assert mark_tree(chain, {3}) == {3}
    binary = RootedForest(tuple([None] + [(i - 1) // 2 for i in range(1, 7)]))
    marked = mark_tree(binary, {3, 4})
    assert {3, 4} <= marked and len(marked) <= 3
    assert tree_components_touch(binary, marked) <= 2
    assert mark_tree(binary, set(range(7))) == set(range(7))


def test_mark_tree_errors():
    with pytest.raises(InputError):
        mark_tree(RootedForest((None, 0)), set())
    with pytest.raises(InputError):
        mark_tree(RootedForest((None, None)), {0})


@given(st.integers(1, 15), st.integers(0, 10 ** 6), st.data())
def test_mark_tree_property(n, seed, data):
    t = random_tree(n, seed)
    parent = [None] * n
    for u, v in t.edges:
        parent[v] = u
    forest = RootedForest(tuple(parent))
    u_set = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    marked = mark_tree(forest, u_set)
    assert u_set <= marked and len(marked) <= 2 * len(u_set) - 1
    assert tree_components_touch(forest, marked) <= 2


@given(graphs(min_n=2, max_n=8, connected=True), st.data())
def test_capture_property(g, data):
    _, td = make_natural_td(g)
    y = data.draw(st.sets(st.integers(0, td.tree.n - 1), min_size=1, max_size=3))
    x, marked = capture_interfaces(g, td, sorted(y))
    check_capture(g, td, sorted(y), x, marked, natural=True)


def make_natural_td(g):
    w, td = exact_treewidth(g)
    assume(is_connected(g))
    return w, make_natural(g, td)


def test_closure_contains_detects_missing_edge():
    assert not closure_contains(path(3), RootedForest((None, None, 1)))
