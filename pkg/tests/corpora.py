"""Graph corpora for the acceptance suite."""

import itertools

import networkx as nx
import numpy as np

from minorpart.decomp import exact_treedepth
from minorpart.generators import complete
from minorpart.graph import Graph, is_connected
from minorpart.minors import find_model


def from_nx(G):
    return Graph(G.number_of_nodes(), list(G.edges()))


def atlas():
    """Every graph on at most 7 vertices, one per isomorphism class."""
    return [from_nx(G) for G in nx.graph_atlas_g()]


def _dedupe(graphs):
    buckets = {}
    out = []
    for g in graphs:
        G = nx.Graph(list(g.edges))
        G.add_nodes_from(range(g.n))
        key = nx.weisfeiler_lehman_graph_hash(G)
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(G, H) for H in bucket):
            continue
        bucket.append(G)
        out.append(g)
    return out


def series_parallel(g):
    """K_4-minor-freeness by reduction: drop vertices of degree <= 1, suppress degree 2."""
    adj = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if len(adj[v]) <= 1:
                for w in adj.pop(v):
                    adj[w].discard(v)
                changed = True
            elif len(adj[v]) == 2:
                a, b = adj.pop(v)
                adj[a].discard(v)
                adj[b].discard(v)
                adj[a].add(b)
                adj[b].add(a)
                changed = True
    return not adj


def connected_k4_minor_free(max_n=8):
    """Connected K_4-minor-free graphs on 1..max_n vertices, one per isomorphism class.

    Sizes up to 7 come from the atlas. A leaf block of a larger member holds a
    non-cut vertex of degree at most 2, and the class is minor-closed, so
    attaching a vertex of degree 1 or 2 to every smaller member reaches all of them.
    """
    k4 = complete(4)
    layer = [g for g in atlas() if g.n >= 1 and is_connected(g) and find_model(g, k4) is None]
    out = list(layer)
    prev = [g for g in layer if g.n == 7]
    for n in range(8, max_n + 1):
        grown = []
        for g in prev:
            for size in (1, 2):
                for nbrs in itertools.combinations(range(n - 1), size):
                    h = Graph(n, list(g.edges) + [(v, n - 1) for v in nbrs])
                    if series_parallel(h):
                        grown.append(h)
        prev = _dedupe(grown)
        # the reduction only filters; the minor search decides
        assert all(find_model(h, k4) is None for h in prev)
        out += prev
    return out


def star_forest(rng, n):
    """Random forest of stars on n vertices."""
    edges = []
    v = 0
    while v < n:
        size = int(rng.integers(1, n - v + 1))
        edges += [(v, v + i) for i in range(1, size)]
        v += size
    return Graph(n, edges)


def shallow_corpus(seed=2024):
    """(graph, h) pairs with treedepth < h, h in {2, 3}, n <= 12.

    Treedepth at most 1 means no edges and at most 2 means a star forest.
    """
    rng = np.random.default_rng(seed)
    out = [(Graph(n), 2) for n in range(1, 13)]
    while len(out) < 12 + 40:
        g = star_forest(rng, int(rng.integers(1, 13)))
        if exact_treedepth(g)[0] < 3:
            out.append((g, 3))
    return out
