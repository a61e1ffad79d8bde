import itertools

import pytest
from hypothesis import given, strategies as st

from minorpart.decomp import exact_treewidth
from minorpart.errors import InputError, PreconditionError
from minorpart.generators import complete, cycle, path, star, u_graph
from minorpart.graph import Graph, quotient
from minorpart.partitions import (HPartition, Layering, PartSplit, bfs_layering, check_embedding,
                                  layered_lower_bound_check, layering_problems, product_embed,
                                  quotient_partition, strong_product_with_clique,
                                  uhd_clique_witness, verify_hpartition)
from strategies import graphs


def c4_k2():
    return HPartition(complete(2), (frozenset({0, 1}), frozenset({2, 3})))


def test_verify_examples():
    rep = verify_hpartition(cycle(4), c4_k2())
    assert rep["valid"] and rep["width"] == 2
    bad = HPartition(Graph(2), (frozenset({0, 1}), frozenset({2, 3})))
    assert not verify_hpartition(cycle(4), bad)["valid"]
    g = cycle(5)
    rep = verify_hpartition(g, HPartition(g, tuple(frozenset({v}) for v in range(5))))
    assert rep["valid"] and rep["width"] == 1


def test_verify_catches_cover_errors():
    g = path(3)
    assert not verify_hpartition(g, HPartition(Graph(1), (frozenset({0, 1}),)))["valid"]
    dup = HPartition(complete(2), (frozenset({0, 1}), frozenset({1, 2})))
    assert "vertex 1 in two parts" in verify_hpartition(g, dup)["problems"]


def test_product_embed_c4():
    emb = product_embed(cycle(4), c4_k2(), 2)
    prod = strong_product_with_clique(complete(2), 2)
    assert prod == complete(4)
    assert check_embedding(cycle(4), complete(2), 2, emb)
    assert product_embed(cycle(4), c4_k2(), 1) is None


def test_product_embed_singletons():
    g = path(4)
    hp = HPartition(g, tuple(frozenset({v}) for v in range(4)))
    assert product_embed(g, hp, 1) == {v: (v, 0) for v in range(4)}


def test_product_embed_rejects_invalid():
    with pytest.raises(InputError):
        product_embed(cycle(4), HPartition(Graph(2), c4_k2().parts), 2)


@given(graphs(max_n=7), st.data())
def test_quotient_partition_embeds(g, data):
    labels = [data.draw(st.integers(0, 2)) for _ in range(g.n)]
    parts = [frozenset(v for v in range(g.n) if labels[v] == x) for x in range(3)]
    parts = [p for p in parts if p]
    hp = quotient_partition(g, parts)
    assert verify_hpartition(g, hp)["valid"]
    emb = product_embed(g, hp, hp.width or 1)
    assert check_embedding(g, hp.h_graph, hp.width or 1, emb)


def test_hpartition_json_round_trip():
    hp = HPartition(complete(2), (frozenset({0, 1}), frozenset({2, 3})), (1, 0),
                    (None, PartSplit(frozenset({2}), frozenset({3}), ((3, 2),), (((2, 3),),))))
    assert HPartition.from_json(hp.to_json()) == hp


def test_bfs_layering_examples():
    assert bfs_layering(path(5), [0]).layers == tuple(frozenset({i}) for i in range(5))
    assert len(bfs_layering(star(4), [0]).layers) == 2
    lay = bfs_layering(u_graph(2, 2), [0, 3])
    assert len(lay.layers) == 2
    assert not layering_problems(u_graph(2, 2), lay)


@given(graphs(max_n=8))
def test_bfs_layering_is_layering(g):
    assert not layering_problems(g, bfs_layering(g))


def test_witness_singleton_partition():
    g = u_graph(2, 2)
    hp = quotient_partition(g, [{v} for v in range(g.n)])
    xs = uhd_clique_witness(2, 2, hp)
    assert len(xs) == 2 and hp.h_graph.has_edge(*xs)


def test_witness_with_merged_roots():
    g = u_graph(2, 2)
    hp = quotient_partition(g, [{0, 3}, {1}, {2}, {4}, {5}])
    xs = uhd_clique_witness(2, 2, hp)
    assert xs[0] == 0 and hp.h_graph.has_edge(*xs)


def test_witness_h1():
    g = u_graph(1, 3)
    hp = quotient_partition(g, [{0, 1, 2}])
    assert uhd_clique_witness(1, 3, hp) == [0]


def test_witness_rejects_wide_partition():
    g = u_graph(2, 2)
    with pytest.raises(PreconditionError):
        uhd_clique_witness(2, 2, quotient_partition(g, [{0, 1, 2}, {3, 4, 5}]))


def test_layered_check_pipeline():
    g = u_graph(2, 3)
    hp = quotient_partition(g, [{v} for v in range(g.n)])
    out = layered_lower_bound_check(2, 1, hp, bfs_layering(g, [0, 4, 8]))
    assert out["valid"] and len(out["clique"]) == 2


def test_layered_check_rejects_four_layers():
    g = u_graph(2, 3)
    hp = quotient_partition(g, [{v} for v in range(g.n)])
    # layers 0..3 inside the first star: 0 | 1 | 2 | 3 is not even a layering
    layers = [{0, 4, 8}, {1, 5, 6, 7, 9, 10, 11}, {2}, {3}]
    out = layered_lower_bound_check(2, 1, hp, Layering(tuple(frozenset(x) for x in layers)))
    assert not out["valid"]


def test_layered_check_h1():
    g = u_graph(1, 3)
    hp = quotient_partition(g, [{0}, {1}, {2}])
    out = layered_lower_bound_check(1, 1, hp, Layering((frozenset({0, 1, 2}),)))
    assert out["valid"] and out["clique"] == [0]


def test_witness_exhaustive_small():
    # every partition of U_{2,2} with parts of size <= 2 yields an edge of H
    g = u_graph(2, 2)
    count = 0
    for labels in itertools.product(range(6), repeat=6):
        if any(labels[v] > max(labels[:v], default=-1) + 1 for v in range(6)):
            continue
        blocks = [[v for v in range(6) if labels[v] == x] for x in range(max(labels) + 1)]
        if max(len(b) for b in blocks) > 2:
            continue
        hp = HPartition(quotient(g, blocks), tuple(frozenset(b) for b in blocks))
        xs = uhd_clique_witness(2, 2, hp)
        assert hp.h_graph.has_edge(*xs)
        assert exact_treewidth(hp.h_graph)[0] >= 1
        count += 1
    assert count == 76
