"""H-partitions, layerings, product embeddings and the U_{h,d} lower-bound witness."""

from dataclasses import dataclass

from .bits import bit_iter, to_mask
from .errors import InputError, PreconditionError, VerificationError
from .generators import complete_dary_forest_parents, u_graph
from .graph import Graph, bfs_distances, component_masks, quotient


@dataclass(frozen=True)
class PartSplit:
    """A/B split of one part; B is covered by the listed geodesics.

    extra_edges[i] holds the non-G edges of the supergraph in which
    geodesics[i] was taken.
    """

    a: frozenset
    b: frozenset
    geodesics: tuple = ()
    extra_edges: tuple = ()

    def to_json(self):
        return {"a": sorted(self.a), "b": sorted(self.b),
                "geodesics": [list(p) for p in self.geodesics],
                "extra_edges": [[list(e) for e in es] for es in self.extra_edges]}

    @classmethod
    def from_json(cls, obj):
        geos = tuple(tuple(p) for p in obj.get("geodesics", []))
        extra = obj.get("extra_edges") or [[] for _ in geos]
        return cls(frozenset(obj["a"]), frozenset(obj["b"]), geos,
                   tuple(tuple(tuple(e) for e in es) for es in extra))


@dataclass(frozen=True)
class HPartition:
    h_graph: Graph
    parts: tuple
    order: tuple = None
    ab: tuple = None  # None entries mark distinguished root parts

    @property
    def width(self):
        return max((len(p) for p in self.parts), default=0)

    @property
    def rank(self):
        if self.order is None:
            return None
        rank = [0] * len(self.order)
        for i, x in enumerate(self.order):
            rank[x] = i
        return rank

    def part_of(self):
        where = {}
        for x, p in enumerate(self.parts):
            for v in p:
                where[v] = x
        return where

    def to_json(self):
        out = {"h": {"n": self.h_graph.n, "edges": [list(e) for e in self.h_graph.edges]},
               "parts": [sorted(p) for p in self.parts]}
        if self.order is not None:
            out["order"] = list(self.order)
        if self.ab is not None:
            out["ab"] = [None if s is None else s.to_json() for s in self.ab]
        return out

    @classmethod
    def from_json(cls, obj):
        h = Graph(obj["h"]["n"], obj["h"]["edges"])
        order = tuple(obj["order"]) if obj.get("order") is not None else None
        ab = tuple(None if s is None else PartSplit.from_json(s) for s in obj["ab"]) if obj.get("ab") is not None else None
        return cls(h, tuple(frozenset(p) for p in obj["parts"]), order, ab)


def hpartition_problems(g, hp):
    """List of reasons hp is not an H-partition of g (empty when valid)."""
    problems = []
    if len(hp.parts) != hp.h_graph.n:
        return ["one part per H-vertex required"]
    seen = set()
    for p in hp.parts:
        for v in p:
            if not (0 <= v < g.n):
                problems.append(f"vertex {v} out of range")
            elif v in seen:
                problems.append(f"vertex {v} in two parts")
            seen.add(v)
    if len(seen) != g.n:
        problems.append("parts do not cover V(G)")
    if problems:
        return problems
    where = hp.part_of()
    for u, v in g.edges:
        x, y = where[u], where[v]
        if x != y and not hp.h_graph.has_edge(x, y):
            problems.append(f"edge ({u},{v}) crosses parts {x},{y} without an H-edge")
    if hp.order is not None and sorted(hp.order) != list(range(hp.h_graph.n)):
        problems.append("order is not a permutation of V(H)")
    return problems


def verify_hpartition(g, hp):
    problems = hpartition_problems(g, hp)
    return {"valid": not problems, "width": hp.width, "problems": problems}


def product_embed(g, hp, c):
    """v -> (x, i) with v in V_x and i its index in V_x, if width ≤ c; otherwise None."""
    if hpartition_problems(g, hp):
        raise InputError("H-partition is invalid")
    if hp.width > c:
        return None
    emb = {}
    for x, p in enumerate(hp.parts):
        for i, v in enumerate(sorted(p)):
            emb[v] = (x, i)
    return emb


def strong_product_with_clique(h, c):
    """H ⊠ K_c with vertex (x, i) numbered x*c + i."""
    edges = []
    for x in range(h.n):
        for i in range(c):
            for j in range(i + 1, c):
                edges.append((x * c + i, x * c + j))
    for x, y in h.edges:
        for i in range(c):
            for j in range(c):
                edges.append((x * c + i, y * c + j))
    return Graph(h.n * c, edges)


def check_embedding(g, h, c, emb):
    prod = strong_product_with_clique(h, c)
    ids = {v: x * c + i for v, (x, i) in emb.items()}
    if len(set(ids.values())) != g.n:
        raise VerificationError("embedding is not injective")
    for u, v in g.edges:
        if not prod.has_edge(ids[u], ids[v]):
            raise VerificationError(f"edge ({u},{v}) not preserved")
    return True


@dataclass(frozen=True)
class Layering:
    layers: tuple


def bfs_layering(g, roots=None):
    """Layer i holds the vertices at distance i from the roots of their component."""
    roots = set(roots or ())
    layer_of = [None] * g.n
    for comp in component_masks(g):
        rs = [v for v in bit_iter(comp) if v in roots] or [(comp & -comp).bit_length() - 1]
        dist = [min(ds) for ds in zip(*(bfs_distances(g, r) for r in rs))]
        for v in bit_iter(comp):
            layer_of[v] = int(dist[v])
    depth = max(layer_of, default=-1) + 1
    layers = [set() for _ in range(depth)]
    for v, i in enumerate(layer_of):
        layers[i].add(v)
    return Layering(tuple(frozenset(layer) for layer in layers))


def layering_problems(g, lay):
    where = {}
    for i, layer in enumerate(lay.layers):
        for v in layer:
            if v in where:
                return [f"vertex {v} in two layers"]
            where[v] = i
    if len(where) != g.n:
        return ["layers do not cover V(G)"]
    return [f"edge ({u},{v}) spans layers {where[u]},{where[v]}"
            for u, v in g.edges if abs(where[u] - where[v]) > 1]


# ---------------------------------------------------------------- U_{h,d} witnesses

def uhd_clique_witness(h, d, hp, per_tree=False):
    """Descend from the first root, always to the smallest-id child whose subtree avoids the current part.

    Returns the parts x_1..x_h met on the way; they form a clique in H. With
    ``per_tree`` the width bound only has to hold inside each tree.
    """
    parent = complete_dary_forest_parents(h, d)
    g_n = len(parent)
    children = [[] for _ in range(g_n)]
    for v, p in enumerate(parent):
        if p is not None:
            children[p].append(v)
    where = hp.part_of()
    if per_tree:
        size = (g_n // d) if d else 0
        for t in range(d):
            tree = range(t * size, (t + 1) * size)
            counts = {}
            for v in tree:
                counts[where[v]] = counts.get(where[v], 0) + 1
            if max(counts.values(), default=0) > d:
                raise PreconditionError("a part meets a tree in more than d vertices")
    elif hp.width > d:
        raise PreconditionError(f"width {hp.width} exceeds d={d}")
    if h == 0:
        return []
    subtree = [0] * g_n
    for v in reversed(range(g_n)):
        subtree[v] |= 1 << v
        if parent[v] is not None:
            subtree[parent[v]] |= subtree[v]
    part_mask = {x: to_mask(p) for x, p in enumerate(hp.parts)}
    u = 0
    path = [u]
    xs = [where[u]]
    for _ in range(h - 1):
        cur = part_mask[xs[-1]]
        nxt = next((c for c in children[u] if not subtree[c] & cur), None)
        if nxt is None:
            raise VerificationError("no child subtree avoids the current part")
        u = nxt
        path.append(u)
        xs.append(where[u])
    for i, x in enumerate(xs):
        for y in xs[i + 1:]:
            if x == y or not hp.h_graph.has_edge(x, y):
                raise VerificationError("descent did not produce a clique")
    return xs


def layered_lower_bound_check(h, c, hp, lay):
    """Lower-bound pipeline on U_{h,3c}: layering sanity, per-layer width, then the clique witness."""
    d = 3 * c
    parent = complete_dary_forest_parents(h, d)
    g = u_graph(h, d)
    if len(parent) != g.n:
        raise InputError("size mismatch")
    problems = layering_problems(g, lay)
    if problems:
        return {"valid": False, "reason": problems[0]}
    where = {v: i for i, layer in enumerate(lay.layers) for v in layer}
    for comp in component_masks(g):
        used = {where[v] for v in bit_iter(comp)}
        if len(used) > 3:
            return {"valid": False, "reason": "a radius-1 component spans more than three layers"}
    problems = hpartition_problems(g, hp)
    if problems:
        return {"valid": False, "reason": problems[0]}
    for x, p in enumerate(hp.parts):
        for i, layer in enumerate(lay.layers):
            if len(p & layer) > c:
                return {"valid": False, "reason": "per-layer width exceeded", "cell": [x, i]}
    clique = uhd_clique_witness(h, d, hp, per_tree=True)
    return {"valid": True, "clique": clique}


def quotient_partition(g, parts):
    """The H-partition whose H is exactly the quotient graph."""
    parts = tuple(frozenset(p) for p in parts)
    return HPartition(quotient(g, parts), parts)
