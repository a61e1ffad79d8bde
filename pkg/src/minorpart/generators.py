"""Graph families and seeded random graphs.

Random graphs use numpy's PCG64 generator seeded through SeedSequence(seed);
one uniform draw is taken per vertex pair in lexicographic order (0,1), (0,2),
..., (n-2,n-1) and the edge is kept when the draw is below p.
"""

import numpy as np

from .errors import InputError
from .graph import Graph, complete_on


def complete_dary_forest_parents(h, d):
    """Parent array of d complete d-ary trees of vertex-height h.

    Trees are numbered consecutively, each in breadth-first order.
    """
    if d < 1:
        raise InputError("d must be positive")
    if h < 0:
        raise InputError("h must be non-negative")
    parent = []
    for _ in range(d):
        base = len(parent)
        level = [base]
        parent.append(None)
        for _depth in range(1, h):
            nxt = []
            for p in level:
                for _c in range(d):
                    nxt.append(len(parent))
                    parent.append(p)
            level = nxt
    if h == 0:
        return []
    return parent


def u_graph(h, d):
    """U_{h,d}: closure of d disjoint complete d-ary trees of vertex-height h."""
    parent = complete_dary_forest_parents(h, d)
    edges = []
    for v, p in enumerate(parent):
        while p is not None:
            edges.append((p, v))
            p = parent[p]
    return Graph(len(parent), edges)


def u_graph_size(h, d):
    if h == 0:
        return 0
    if d == 1:
        return h
    return d * (d ** h - 1) // (d - 1)


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, complete_on(n, range(n)))


def grid(rows, cols):
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def star(leaves):
    """K_{1,leaves} with the centre at 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def binary_tree_closure(h):
    """Closure of one complete binary tree of vertex-height h, root first."""
    parent = complete_dary_forest_parents(h, 2)[: (2 ** h - 1) if h else 0]
    edges = []
    for v, p in enumerate(parent):
        while p is not None:
            edges.append((p, v))
            p = parent[p]
    return Graph(len(parent), edges)


FAMILIES = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "grid": grid,
    "star": star,
    "binary_tree_closure": binary_tree_closure,
}


def family(name, *params):
    if name not in FAMILIES:
        raise InputError(f"unknown family {name!r}")
    if any(p < 1 for p in params):
        raise InputError("size parameters must be positive")
    try:
        return FAMILIES[name](*params)
    except TypeError as exc:
        raise InputError(f"bad parameters for {name}: {exc}") from None


def random_graph(n, p, seed):
    if not 0 <= p <= 1:
        raise InputError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    draws = rng.random(n * (n - 1) // 2)
    edges = []
    i = 0
    for u in range(n):
        for v in range(u + 1, n):
            if draws[i] < p:
                edges.append((u, v))
            i += 1
    return Graph(n, edges)


def random_tree(n, seed):
    """Random labelled tree: vertex i > 0 attaches to a uniform earlier vertex."""
    rng = np.random.default_rng(seed)
    return Graph(n, [(int(rng.integers(0, i)), i) for i in range(1, n)])
