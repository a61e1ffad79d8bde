"""Exact minor search, attached models, separations and Menger linkages."""

from dataclasses import dataclass, field

from .bits import bit_iter, lowest, to_mask
from .errors import BudgetExceeded, InputError, VerificationError
from .graph import complete_on, component_masks, is_connected_mask, neighborhood_mask

DEFAULT_NODE_BUDGET = 10 ** 7


@dataclass(frozen=True)
class Model:
    """branch_sets[x] is the branch set of pattern vertex x."""

    branch_sets: tuple

    def union(self):
        out = frozenset()
        for b in self.branch_sets:
            out |= b
        return out

    def to_json(self):
        return [sorted(b) for b in self.branch_sets]


@dataclass(frozen=True)
class AttachedModel:
    """A model of K_a ⊕ H whose apex vertex attachment[i] touches roots[i]."""

    model: Model
    roots: tuple
    attachment: tuple
    a: int = 0

    def to_json(self):
        return {"branch_sets": self.model.to_json(),
                "roots": [sorted(r) for r in self.roots],
                "attachment": list(self.attachment), "a": self.a}


@dataclass(frozen=True)
class Separation:
    side_a: frozenset
    side_b: frozenset

    @property
    def order(self):
        return len(self.side_a & self.side_b)

    def to_json(self):
        return {"a": sorted(self.side_a), "b": sorted(self.side_b), "order": self.order}


@dataclass(frozen=True)
class Linkage:
    paths: tuple = field(default_factory=tuple)

    @property
    def order(self):
        return len(self.paths)

    def to_json(self):
        return {"paths": [list(p) for p in self.paths]}


def plus_clique(g, vertices):
    """g with all edges inside ``vertices`` added (the graph g^{+R})."""
    return g.add_edges(complete_on(g.n, vertices))


# ---------------------------------------------------------------- checkers

def check_model(host, pattern, model):
    """Raise VerificationError unless ``model`` is a pattern-model in host."""
    sets = model.branch_sets
    if len(sets) != pattern.n:
        raise VerificationError("one branch set per pattern vertex required")
    used = 0
    masks = []
    for x, b in enumerate(sets):
        mask = to_mask(b)
        if not b or any(not (0 <= v < host.n) for v in b):
            raise VerificationError(f"branch set {x} empty or out of range")
        if used & mask:
            raise VerificationError(f"branch set {x} overlaps another")
        if not is_connected_mask(host, mask):
            raise VerificationError(f"branch set {x} is disconnected")
        used |= mask
        masks.append(mask)
    for x, y in pattern.edges:
        if not neighborhood_mask(host, masks[x]) & masks[y]:
            raise VerificationError(f"no host edge between branch sets {x} and {y}")
    return True


def check_attached_model(host, pattern, am):
    check_model(host, pattern, am.model)
    avoid = 0
    for r in am.roots:
        avoid |= to_mask(r)
    if to_mask(am.model.union()) & avoid:
        raise VerificationError("attached model meets a root set")
    if len(set(am.attachment)) != len(am.attachment) or len(am.attachment) != len(am.roots):
        raise VerificationError("attachment must be injective and cover the roots")
    apex = set(range(am.a))
    for x in am.attachment:
        if x not in apex:
            raise VerificationError("attachment must use apex vertices")
    for x in apex:
        if pattern.adj[x] | (1 << x) != pattern.full:
            raise VerificationError(f"pattern vertex {x} is not universal")
    for r, x in zip(am.roots, am.attachment):
        if not neighborhood_mask(host, to_mask(r)) & to_mask(am.model.branch_sets[x]):
            raise VerificationError(f"branch set {x} does not touch its root set")
    return True


def check_separation(g, sep, s=(), t=()):
    a, b = sep.side_a, sep.side_b
    if a | b != frozenset(range(g.n)):
        raise VerificationError("separation sides must cover V(G)")
    a_only, b_only = to_mask(a - b), to_mask(b - a)
    if neighborhood_mask(g, a_only) & b_only:
        raise VerificationError("edge across the separation")
    if not set(s) <= a or not set(t) <= b:
        raise VerificationError("S must lie in A and T in B")
    return True


def check_linkage(g, link, s, t):
    s, t = set(s), set(t)
    seen = set()
    for p in link.paths:
        if not p or p[0] not in s or p[-1] not in t:
            raise VerificationError("linkage path must run from S to T")
        if any(v in s or v in t for v in p[1:-1]):
            raise VerificationError("internal vertex in S ∪ T")
        if len(p) == 1 and p[0] not in t:
            raise VerificationError("trivial path must lie in S ∩ T")
        if any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
            raise VerificationError("linkage path uses a non-edge")
        if seen & set(p) or len(set(p)) != len(p):
            raise VerificationError("linkage paths are not vertex-disjoint")
        seen |= set(p)
    return True


# ---------------------------------------------------------------- model search

class _Search:
    def __init__(self, host, pattern, allowed, must_meet, budget):
        self.g = host
        self.p = pattern
        self.allowed = allowed
        self.must_meet = must_meet
        self.budget = budget
        self.nodes = 0
        self.order = self._order()
        self.pos = {x: i for i, x in enumerate(self.order)}
        self.twin_prev = self._twins()
        self.branch = [0] * pattern.n

    def _order(self):
        p = self.p
        left = set(range(p.n))
        order = []
        while left:
            placed = to_mask(order)
            x = min(left, key=lambda v: (-(p.adj[v] & placed).bit_count(),
                                         -p.degree(v), -(v in self.must_meet), v))
            order.append(x)
            left.remove(x)
        return order

    def _twins(self):
        p = self.p
        prev = {}
        for i, x in enumerate(self.order):
            for y in reversed(self.order[:i]):
                if (p.adj[x] & ~(1 << y)) == (p.adj[y] & ~(1 << x)) \
                        and self.must_meet.get(x) == self.must_meet.get(y):
                    prev[x] = y
                    break
        return prev

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"model search exceeded {self.budget} nodes")

    def run(self):
        if self.p.n == 0:
            return ()
        if self.p.n > self.allowed.bit_count():
            return None
        if self._solve(0, self.allowed):
            return tuple(frozenset(bit_iter(b)) for b in self.branch)
        return None

    def _candidates(self, x, free, limit):
        """Connected subsets of ``free`` usable as B_x, each yielded once."""
        g = self.g
        assigned_nbrs = [self.branch[y] for y in bit_iter(self.p.adj[x]) if self.branch[y]]
        touch = [neighborhood_mask(g, b) for b in assigned_nbrs]
        need = list(touch)
        if x in self.must_meet:
            need.append(self.must_meet[x])
        if x in self.twin_prev:
            floor = lowest(self.branch[self.twin_prev[x]])
            free &= ~((1 << (floor + 1)) - 1)
        if need:
            seeds = min((t & free for t in need), key=int.bit_count)
        else:
            seeds = free
        banned = 0
        for s in bit_iter(seeds):
            start = 1 << s
            yield from self._grow(start, g.adj[s] & free & ~banned & ~start, free, banned | start,
                                  limit, need)
            banned |= start

    def _grow(self, cur, cand, free, banned, limit, need):
        if all(cur & t for t in need):
            yield cur
        if cur.bit_count() >= limit:
            return
        g = self.g
        local_ban = banned
        for w in bit_iter(cand):
            bit = 1 << w
            nxt = cur | bit
            ncand = (cand | g.adj[w]) & free & ~local_ban & ~nxt
            yield from self._grow(nxt, ncand, free, local_ban | bit, limit, need)
            local_ban |= bit

    def _feasible(self, idx, free):
        left = self.order[idx:]
        if len(left) > free.bit_count():
            return False
        if not left:
            return True
        comps = None
        for z in left:
            nb = [neighborhood_mask(self.g, self.branch[y])
                  for y in bit_iter(self.p.adj[z]) if self.branch[y]]
            if z in self.must_meet:
                nb.append(self.must_meet[z])
            if not nb:
                continue
            if comps is None:
                comps = component_masks(self.g, free)
            if not any(all(c & t for t in nb) for c in comps):
                return False
        return True

    def _solve(self, idx, free):
        if idx == len(self.order):
            return True
        x = self.order[idx]
        remaining = len(self.order) - idx - 1
        limit = free.bit_count() - remaining
        for b in self._candidates(x, free, limit):
            self.tick()
            self.branch[x] = b
            rest = free & ~b
            if self._feasible(idx + 1, rest) and self._solve(idx + 1, rest):
                return True
            self.branch[x] = 0
        return False


def find_model(host, pattern, allowed=None, must_meet=None, budget=DEFAULT_NODE_BUDGET):
    """A pattern-model in host (branch sets inside ``allowed``), or None.

    ``must_meet`` maps pattern vertices to bitsets their branch set has to
    intersect. Raises BudgetExceeded instead of guessing.
    """
    allowed = host.full if allowed is None else allowed
    must_meet = dict(must_meet or {})
    if pattern.n > allowed.bit_count():
        return None
    sub_edges = sum(1 for u, v in host.edges if allowed >> u & 1 and allowed >> v & 1)
    if pattern.m > sub_edges:
        return None
    sets = _Search(host, pattern, allowed, must_meet, budget).run()
    if sets is None:
        return None
    model = Model(sets)
    check_model(host, pattern, model)
    return model


def apex_count(pattern):
    """Largest a such that vertices 0..a-1 are universal in pattern."""
    a = 0
    while a < pattern.n and pattern.adj[a] | (1 << a) == pattern.full:
        a += 1
    return a


def find_attached_model(host, pattern, roots, a=None, allowed=None,
                        budget=DEFAULT_NODE_BUDGET):
    """An R-attached model of pattern = K_a ⊕ H (apex ids 0..a-1), or None.

    Apex vertex i attaches to roots[i]; this is without loss of generality
    because apex vertices are twins.
    """
    roots = [frozenset(r) for r in roots]
    if a is None:
        a = apex_count(pattern)
    elif apex_count(pattern) < a:
        raise InputError("pattern vertices 0..a-1 must be universal")
    if a < len(roots):
        raise InputError("need at least as many apex vertices as root sets")
    root_mask = 0
    for r in roots:
        m = to_mask(r)
        if root_mask & m or not r:
            raise InputError("root sets must be non-empty and pairwise disjoint")
        root_mask |= m
    free = (host.full if allowed is None else allowed) & ~root_mask
    must = {i: neighborhood_mask(host, to_mask(r)) for i, r in enumerate(roots)}
    sets = _Search(host, pattern, free, must, budget).run() if pattern.n <= free.bit_count() else None
    if sets is None:
        return None
    am = AttachedModel(Model(sets), tuple(roots), tuple(range(len(roots))), a)
    check_attached_model(host, pattern, am)
    return am


# ---------------------------------------------------------------- Menger

def _max_flow_paths(g, s_mask, t_mask, k, uncut=0, allowed=None):
    """Vertex-capacitated augmenting paths from S to T, stopping at k.

    Node 2v is v_in, 2v+1 is v_out; source 2n, sink 2n+1. Returns
    (flow_value, residual-reachable node set, flow dict).
    """
    n = g.n
    allowed = g.full if allowed is None else allowed
    big = n + 1
    src, snk = 2 * n, 2 * n + 1
    cap = {}
    out = [[] for _ in range(2 * n + 2)]
    # every forward arc is distinct, so each (a, b) is set exactly once
    for v in bit_iter(allowed):
        a, b = 2 * v, 2 * v + 1
        out[a].append(b)
        out[b].append(a)
        cap[(a, b)] = big if uncut >> v & 1 else 1
        cap[(b, a)] = 0
        for w in g.neighbors(v):
            if allowed >> w & 1:
                c = 2 * w
                out[b].append(c)
                out[c].append(b)
                cap[(b, c)] = big
                cap[(c, b)] = 0
    for v in bit_iter(s_mask & allowed):
        out[src].append(2 * v)
        out[2 * v].append(src)
        cap[(src, 2 * v)] = big
        cap[(2 * v, src)] = 0
    for v in bit_iter(t_mask & allowed):
        out[2 * v + 1].append(snk)
        out[snk].append(2 * v + 1)
        cap[(2 * v + 1, snk)] = big
        cap[(snk, 2 * v + 1)] = 0
    for a in out:
        a.sort()
    flow = 0
    while flow < k:
        prev = {src: None}
        queue = [src]
        head = 0
        while head < len(queue) and snk not in prev:
            a = queue[head]
            head += 1
            for b in out[a]:
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    queue.append(b)
        if snk not in prev:
            return flow, set(prev), cap
        b = snk
        while prev[b] is not None:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    return flow, None, cap


def _separation_from_cut(g, reach):
    n = g.n
    cut = {v for v in range(n) if 2 * v in reach and 2 * v + 1 not in reach}
    side = {v for v in range(n) if 2 * v + 1 in reach}
    return Separation(frozenset(side | cut), frozenset(set(range(n)) - side))


def _trim(p, s, t):
    last_s = max(i for i, v in enumerate(p) if v in s)
    p = p[last_s:]
    first_t = min(i for i, v in enumerate(p) if v in t)
    return tuple(p[:first_t + 1])


def menger(g, s, t, k):
    """Linkage of order k from S to T, or a separation (A,B) of order < k with S ⊆ A, T ⊆ B."""
    if k < 1:
        raise InputError("k must be positive")
    s, t = frozenset(s), frozenset(t)
    s_mask, t_mask = to_mask(s), to_mask(t)
    flow, reach, cap = _max_flow_paths(g, s_mask, t_mask, k)
    if flow >= k:
        raw = _flow_paths(g, cap, s_mask)
        link = Linkage(tuple(sorted(_trim(p, s, t) for p in raw))[:k])
        check_linkage(g, link, s, t)
        if link.order != k:
            raise VerificationError("flow decomposition lost a path")
        return link
    # prefer a cut away from the terminals when one of the same size exists
    for keep in (s_mask | t_mask, t_mask, s_mask):
        f2, r2, _ = _max_flow_paths(g, s_mask, t_mask, k, uncut=keep)
        if f2 == flow:
            reach = r2
            break
    sep = _separation_from_cut(g, reach)
    check_separation(g, sep, s, t)
    if sep.order >= k:
        raise VerificationError("cut is not smaller than k")
    return sep


def _flow_paths(g, cap, s_mask):
    """Decompose a unit vertex flow into S-T walks (each vertex carries at most one unit)."""
    n = g.n
    big = n + 1
    succ = {}
    for v in range(n):
        for w in g.neighbors(v):
            if big - cap.get((2 * v + 1, 2 * w), big) > 0:
                succ[v] = w
    paths = []
    for s in bit_iter(s_mask):
        if cap.get((2 * n, 2 * s), big) >= big:
            continue
        p = [s]
        while p[-1] in succ:
            p.append(succ[p[-1]])
        paths.append(p)
    return paths


def separation_with_uncuttable(g, s_mask, t_mask, k, uncut=0):
    """Separation of order < k with S in A, T in B and no uncuttable vertex in A ∩ B, or None."""
    flow, reach, _ = _max_flow_paths(g, s_mask, t_mask, k, uncut=uncut)
    if flow >= k:
        return None
    return _separation_from_cut(g, reach)
