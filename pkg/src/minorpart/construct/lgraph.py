"""Graphs on arbitrary integer labels, for constructions that delete, identify and complete."""

from ..bits import bit_iter, to_mask
from ..graph import Graph


class LGraph:
    """Simple graph whose vertices are ints; adj maps a label to a frozenset of labels."""

    __slots__ = ("adj",)

    def __init__(self, adj):
        self.adj = adj

    @classmethod
    def from_graph(cls, g, labels=None):
        labels = list(range(g.n)) if labels is None else list(labels)
        return cls({labels[v]: frozenset(labels[w] for w in g.neighbors(v)) for v in range(g.n)})

    def vertices(self):
        return sorted(self.adj)

    def __len__(self):
        return len(self.adj)

    def __contains__(self, v):
        return v in self.adj

    def edges(self):
        return sorted((u, v) for u in self.adj for v in self.adj[u] if u < v)

    def has_edge(self, u, v):
        return v in self.adj.get(u, ())

    def induced(self, keep):
        keep = set(keep)
        return LGraph({v: self.adj[v] & keep for v in self.adj if v in keep})

    def remove(self, drop):
        drop = set(drop)
        return LGraph({v: ns - drop for v, ns in self.adj.items() if v not in drop})

    def identify(self, group, label):
        """Replace the vertices of ``group`` by the single vertex ``label``."""
        group = set(group)
        nb = set()
        for v in group:
            nb |= self.adj[v]
        nb -= group
        out = {}
        for v, ns in self.adj.items():
            if v in group:
                continue
            out[v] = frozenset(ns - group) | ({label} if ns & group else frozenset())
        out[label] = frozenset(nb)
        return LGraph(out)

    def contract(self, u, v):
        """Contract the edge uv into v."""
        return self.identify({u, v}, v)

    def with_clique(self, vs):
        vs = set(vs)
        out = dict(self.adj)
        for v in vs:
            out[v] = out[v] | (vs - {v})
        return LGraph(out)

    def neighborhood(self, s):
        s = set(s)
        out = set()
        for v in s:
            out |= self.adj[v]
        return frozenset(out - s)

    def components(self, within=None):
        """Components of the subgraph induced by ``within``, ordered by smallest label."""
        left = set(self.adj) if within is None else set(within)
        out = []
        while left:
            start = min(left)
            comp = {start}
            stack = [start]
            while stack:
                for w in self.adj[stack.pop()]:
                    if w in left and w not in comp:
                        comp.add(w)
                        stack.append(w)
            left -= comp
            out.append(frozenset(comp))
        return out

    def is_connected(self, within=None):
        return len(self.components(within)) <= 1

    def dense(self):
        """(Graph on 0..n-1, labels) with labels sorted ascending."""
        labels = sorted(self.adj)
        pos = {v: i for i, v in enumerate(labels)}
        edges = [(pos[u], pos[w]) for u in labels for w in self.adj[u] if u < w]
        return Graph(len(labels), edges), labels


class Dense:
    """A dense snapshot of an LGraph with label <-> id translation."""

    def __init__(self, lg):
        self.g, self.labels = lg.dense()
        self.pos = {v: i for i, v in enumerate(self.labels)}

    def mask(self, vs):
        return to_mask(self.pos[v] for v in vs)

    def ids(self, vs):
        return [self.pos[v] for v in vs]

    def back(self, mask_or_ids):
        if isinstance(mask_or_ids, int):
            return frozenset(self.labels[i] for i in bit_iter(mask_or_ids))
        return frozenset(self.labels[i] for i in mask_or_ids)
