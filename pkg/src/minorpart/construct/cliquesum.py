"""Gluing two graphs along cliques."""

from ..errors import InputError
from ..graph import Graph


def _is_clique(g, vs):
    vs = list(vs)
    return all(g.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])


def clique_sum(h1, clique1, h2, f):
    """Identify each x of h2's clique with f[x] in h1's clique.

    h1 keeps its ids; the remaining vertices of h2 follow in increasing order.
    f need not be injective, so edges that collapse onto one vertex vanish.
    """
    clique1 = set(clique1)
    f = {int(x): int(y) for x, y in dict(f).items()}
    if any(not (0 <= v < h1.n) for v in clique1) or not _is_clique(h1, clique1):
        raise InputError("clique1 must be a clique of h1")
    if any(not (0 <= x < h2.n) for x in f) or not _is_clique(h2, f):
        raise InputError("the domain of f must be a clique of h2")
    if not set(f.values()) <= clique1:
        raise InputError("f must map into clique1")
    remap = dict(f)
    nxt = h1.n
    for v in range(h2.n):
        if v not in remap:
            remap[v] = nxt
            nxt += 1
    edges = list(h1.edges)
    edges += [(remap[u], remap[v]) for u, v in h2.edges if remap[u] != remap[v]]
    return Graph(nxt, edges)
