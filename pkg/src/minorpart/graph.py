"""Immutable simple graphs on dense vertex ids, with distance and set utilities."""

import math

from .bits import bit_iter, to_mask
from .errors import InputError

INF = math.inf


class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Edges are kept as a sorted tuple of (u, v) with u < v; adjacency is
    available both as sorted neighbour tuples and as int bitsets.
    """

    __slots__ = ("n", "edges", "adj", "_nbrs")

    def __init__(self, n, edges=()):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        norm = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InputError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            norm.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(norm))
        adj = [0] * n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj = tuple(adj)
        self._nbrs = None

    @property
    def m(self):
        return len(self.edges)

    @property
    def full(self):
        return (1 << self.n) - 1

    def vertices(self):
        return range(self.n)

    def neighbors(self, v):
        if self._nbrs is None:
            self._nbrs = tuple(tuple(bit_iter(a)) for a in self.adj)
        return self._nbrs[v]

    def degree(self, v):
        return self.adj[v].bit_count()

    def has_edge(self, u, v):
        return bool(self.adj[u] >> v & 1)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def induced(self, vertices):
        """Induced subgraph on ``vertices``; returns (graph, labels) with labels[i] = old id."""
        labels = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(labels)}
        sub = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(labels), sub), labels

    def add_edges(self, extra):
        return Graph(self.n, list(self.edges) + list(extra))

    def remove_edges(self, drop):
        drop = {(min(u, v), max(u, v)) for u, v in drop}
        return Graph(self.n, [e for e in self.edges if e not in drop])


def complete_on(n, vertices):
    vs = sorted(vertices)
    return [(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))]


def _check_vertex(g, v):
    if not (0 <= v < g.n):
        raise InputError(f"vertex {v} out of range for n={g.n}")


def bfs_distances(g, source, within=None):
    """Edge-count distances from ``source``; unreachable vertices get INF.

    ``within`` optionally restricts the search to a vertex bitset.
    """
    _check_vertex(g, source)
    allowed = g.full if within is None else within
    dist = [INF] * g.n
    dist[source] = 0
    seen = 1 << source
    frontier = 1 << source
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for u in bit_iter(frontier):
            nxt |= g.adj[u]
        nxt &= allowed & ~seen
        for v in bit_iter(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


def ball_mask(g, v, r, within=None):
    allowed = g.full if within is None else within
    seen = frontier = 1 << v
    for _ in range(r):
        nxt = 0
        for u in bit_iter(frontier):
            nxt |= g.adj[u]
        nxt &= allowed & ~seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
    return seen


def ball(g, v, r):
    """Closed r-neighbourhood of v."""
    _check_vertex(g, v)
    if r < 0:
        raise InputError("radius must be non-negative")
    return frozenset(bit_iter(ball_mask(g, v, r)))


def shortest_path_between(g, sources, targets, within=None):
    """Shortest path from a vertex of ``sources`` to a vertex of ``targets`` (bitsets).

    Layers are grown from the sources; each vertex takes its smallest-id
    parent in the previous layer, and the smallest-id target reached first
    ends the path. Returns a list of vertices or None.
    """
    allowed = g.full if within is None else within
    sources &= allowed
    targets &= allowed
    if not sources or not targets:
        return None
    hit = sources & targets
    if hit:
        return [(hit & -hit).bit_length() - 1]
    parent = {}
    seen = sources
    frontier = sources
    while frontier:
        nxt = 0
        for u in bit_iter(frontier):
            nxt |= g.adj[u]
        nxt &= allowed & ~seen
        if not nxt:
            return None
        for v in bit_iter(nxt):
            parent[v] = (g.adj[v] & frontier & -(g.adj[v] & frontier)).bit_length() - 1
        seen |= nxt
        reached = nxt & targets
        if reached:
            v = (reached & -reached).bit_length() - 1
            path = [v]
            while v in parent:
                v = parent[v]
                path.append(v)
            path.reverse()
            return path
        frontier = nxt
    return None


def shortest_path(g, u, v, within=None):
    _check_vertex(g, u)
    _check_vertex(g, v)
    return shortest_path_between(g, 1 << u, 1 << v, within)


def is_path(g, p):
    if not p or len(set(p)) != len(p):
        return False
    if any(not (0 <= v < g.n) for v in p):
        return False
    return all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


def is_geodesic(g, p):
    """True iff the path p is a shortest path between its endpoints."""
    p = list(p)
    if not is_path(g, p):
        raise InputError("sequence is not a path in the graph")
    return bfs_distances(g, p[0])[p[-1]] == len(p) - 1


def component_masks(g, mask=None):
    """Components of g[mask] as bitsets, ordered by smallest member."""
    rest = g.full if mask is None else mask
    out = []
    while rest:
        low = rest & -rest
        comp = frontier = low
        while frontier:
            nxt = 0
            for u in bit_iter(frontier):
                nxt |= g.adj[u]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        rest &= ~comp
    return out


def components(g):
    return [frozenset(bit_iter(c)) for c in component_masks(g)]


def is_connected_mask(g, mask):
    """Whether g[mask] is connected; the empty set counts as connected."""
    if not mask:
        return True
    low = mask & -mask
    comp = frontier = low
    while frontier:
        nxt = 0
        for u in bit_iter(frontier):
            nxt |= g.adj[u]
        nxt &= mask & ~comp
        comp |= nxt
        frontier = nxt
    return comp == mask


def is_connected(g):
    return is_connected_mask(g, g.full)


def neighborhood_mask(g, mask):
    """Open neighbourhood N(S) of a vertex bitset."""
    out = 0
    for u in bit_iter(mask):
        out |= g.adj[u]
    return out & ~mask


def disjoint_union(g1, g2):
    shift = g1.n
    return Graph(g1.n + g2.n, list(g1.edges) + [(u + shift, v + shift) for u, v in g2.edges])


def join(g1, g2):
    """g1 ⊕ g2: disjoint union plus all edges across; g2's ids are shifted by g1.n."""
    shift = g1.n
    cross = [(u, v + shift) for u in range(g1.n) for v in range(g2.n)]
    return Graph(g1.n + g2.n,
                 list(g1.edges) + [(u + shift, v + shift) for u, v in g2.edges] + cross)


def complete_graph(n):
    return Graph(n, complete_on(n, range(n)))


def closure_of_rooted_forest(forest):
    """Graph on the forest's vertices with an edge between every ancestor/descendant pair."""
    parent = forest.parent
    edges = []
    for v in range(len(parent)):
        p = parent[v]
        while p is not None:
            edges.append((p, v))
            p = parent[p]
    return Graph(len(parent), edges)


def _check_partition(n, parts):
    seen = set()
    for part in parts:
        for v in part:
            if not (0 <= v < n) or v in seen:
                raise InputError("parts do not partition the vertex set")
            seen.add(v)
    if len(seen) != n:
        raise InputError("parts do not partition the vertex set")


def quotient(g, parts):
    """Graph with one vertex per part and an edge wherever a cross edge exists."""
    parts = [list(p) for p in parts]
    _check_partition(g.n, parts)
    where = [0] * g.n
    for i, part in enumerate(parts):
        for v in part:
            where[v] = i
    edges = {(min(where[u], where[v]), max(where[u], where[v]))
             for u, v in g.edges if where[u] != where[v]}
    return Graph(len(parts), edges)


def contract_set(g, s):
    """Contract the connected set s into one vertex.

    Returns (graph, remap) where remap[old] = new id. Vertices outside s keep
    their relative order; the contracted vertex takes the position of min(s).
    """
    s = set(s)
    if not s:
        raise InputError("cannot contract an empty set")
    mask = to_mask(s)
    if any(not (0 <= v < g.n) for v in s) or not is_connected_mask(g, mask):
        raise InputError("contracted set must induce a connected subgraph")
    anchor = min(s)
    remap = {}
    nxt = 0
    for v in range(g.n):
        if v in s and v != anchor:
            continue
        remap[v] = nxt
        nxt += 1
    for v in s:
        remap[v] = remap[anchor]
    edges = {(min(remap[u], remap[v]), max(remap[u], remap[v]))
             for u, v in g.edges if remap[u] != remap[v]}
    return Graph(nxt, edges), remap
