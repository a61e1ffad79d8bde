import itertools

import pytest
from hypothesis import given, strategies as st

from minorpart.construct.dichotomy import assemble_from_attached, join_pattern
from minorpart.errors import BudgetExceeded, InputError, VerificationError
from minorpart.generators import complete, cycle, path, star, u_graph
from minorpart.graph import Graph, is_connected_mask
from minorpart.minors import (AttachedModel, Linkage, Model, Separation, check_model,
                              check_separation, find_attached_model, find_model, menger)
from minorpart.bits import to_mask
from oracles import adjacency, connected, has_minor, max_disjoint_paths
from strategies import graphs


def independent_model_check(host, pattern, sets):
    nb = adjacency(host)
    assert len(sets) == pattern.n
    seen = set()
    for s in sets:
        assert s and not (seen & set(s)) and connected(nb, s)
        seen |= set(s)
    for x, y in pattern.edges:
        assert any(w in sets[y] for v in sets[x] for w in nb[v])


def test_c5_has_triangle():
    m = find_model(cycle(5), complete(3))
    assert m is not None
    independent_model_check(cycle(5), complete(3), m.branch_sets)


def test_forest_has_no_triangle():
    assert find_model(path(4), complete(3)) is None


def test_too_few_vertices():
    assert find_model(complete(4), complete(5)) is None


def test_budget_is_explicit():
    with pytest.raises(BudgetExceeded):
        find_model(cycle(9), complete(4), budget=3)


def test_attached_edge_on_p4():
    am = find_attached_model(path(4), complete(2), [{0}])
    assert am is not None
    assert am.model.branch_sets[am.attachment[0]] == frozenset({1})
    independent_model_check(path(4), complete(2), am.model.branch_sets)


def test_attached_star_absent():
    pattern = join_pattern(1, 1, 2)
    assert find_attached_model(star(3), pattern, [{0}], a=1) is None


def test_attached_star_absent_by_brute_force():
    # apex branch set must touch the centre while the two others touch the apex
    g = star(3)
    pattern = join_pattern(1, 1, 2)
    for labels in itertools.product(range(4), repeat=3):
        sets = [[v + 1 for v in range(3) if labels[v] == x] for x in range(3)]
        if all(sets):
            ok = all(connected(adjacency(g), s) for s in sets)
            apex_touch = any(w == 0 for v in sets[0] for w in adjacency(g)[v])
            links = all(any(w in sets[y] for v in sets[x] for w in adjacency(g)[v])
                        for x, y in pattern.edges)
            assert not (ok and apex_touch and links)


def test_attached_without_roots_is_plain_search():
    am = find_attached_model(cycle(5), complete(3), [])
    assert am is not None and am.roots == ()


def test_attached_rejects_overlapping_roots():
    with pytest.raises(InputError):
        find_attached_model(path(5), complete(3), [{0, 1}, {1, 2}])


def test_check_model_rejects_disconnected_set():
    with pytest.raises(VerificationError):
        check_model(path(3), complete(1), Model((frozenset({0, 2}),)))


@given(graphs(max_n=6), st.sampled_from([complete(3), path(3), cycle(4), complete(4),
                                           star(3), Graph(2), u_graph(2, 2)]))
def test_find_model_matches_brute_force(host, pattern):
    m = find_model(host, pattern)
    assert (m is not None) == has_minor(host, pattern)
    if m is not None:
        independent_model_check(host, pattern, m.branch_sets)


def test_menger_c4():
    out = menger(cycle(4), {0, 1}, {2, 3}, 2)
    assert isinstance(out, Linkage)
    assert sorted(out.paths) == [(0, 3), (1, 2)]


def test_menger_p3_separation():
    out = menger(path(3), {0}, {2}, 2)
    assert isinstance(out, Separation)
    assert (out.side_a, out.side_b) == ({0, 1}, {1, 2}) and out.order == 1


def test_menger_k5():
    out = menger(complete(5), {0}, {4}, 1)
    assert isinstance(out, Linkage) and out.order == 1


def test_menger_overlapping_terminals():
    out = menger(path(3), {1}, {1}, 1)
    assert isinstance(out, Linkage) and out.paths == ((1,),)


@given(graphs(min_n=2, max_n=7), st.data())
def test_menger_matches_path_enumeration(g, data):
    s = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=3))
    t = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=3))
    k = data.draw(st.integers(1, 4))
    best = max_disjoint_paths(g, s, t, k)
    out = menger(g, s, t, k)
    if best >= k:
        assert isinstance(out, Linkage) and out.order == k
        used = set()
        for p in out.paths:
            assert p[0] in s and p[-1] in t and not used & set(p)
            assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
            used |= set(p)
    else:
        assert isinstance(out, Separation) and out.order < k
        check_separation(g, out, s, t)
        # with A ∩ B deleted no S-T path survives
        cut = out.side_a & out.side_b
        rest = Graph(g.n, [(u, v) for u, v in g.edges if u not in cut and v not in cut])
        if s - cut and t - cut:
            assert max_disjoint_paths(rest, s - cut, t - cut, 1) == 0


# ---------------------------------------------------------------- pigeonhole assembly

def planted(k, h, d, choices):
    """Disjoint K_{k+1} ⊕ U_{h-1,d} copies; copy i attaches apex j to roots[j][choices[i][j]]."""
    pattern = join_pattern(k + 1, h - 1, d)
    roots = [[2 * j, 2 * j + 1] for j in range(k)]
    n = 2 * k
    edges = []
    models = []
    for pick in choices:
        base = n
        n += pattern.n
        edges += [(base + u, base + v) for u, v in pattern.edges]
        for j in range(k):
            edges.append((roots[j][pick[j]], base + j))
        models.append([frozenset({base + x}) for x in range(pattern.n)])
    return Graph(n, edges), roots, models


@pytest.mark.parametrize("k", [0, 1, 2])
@pytest.mark.parametrize("h", [1, 2])
@pytest.mark.parametrize("d", [1, 2])
def test_pigeonhole_assembles_join_model(k, h, d):
    count = (d - 1) * 2 ** k + 1
    # spread the root choices as evenly as possible so exactly one key reaches d
    keys = list(itertools.product((0, 1), repeat=k))
    choices = [keys[i % len(keys)] for i in range(count)]
    g, roots, models = planted(k, h, d, choices)
    model = assemble_from_attached(g, roots, models, h, d)
    independent_model_check(g, join_pattern(k, h, d), model.branch_sets)
    for j in range(k):
        assert model.branch_sets[j] & set(roots[j])


def test_pigeonhole_needs_d_agreeing_models():
    g, roots, models = planted(1, 2, 2, [(0,), (1,)])
    with pytest.raises(InputError):
        assemble_from_attached(g, roots, models, 2, 2)


def test_attached_model_round_trip():
    am = find_attached_model(path(4), complete(2), [{0}])
    obj = am.to_json()
    assert obj["roots"] == [[0]] and obj["attachment"] == [0]
    assert isinstance(am, AttachedModel) and is_connected_mask(path(4), to_mask(am.model.union()))
