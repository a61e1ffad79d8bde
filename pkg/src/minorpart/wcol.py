"""Weak reachability and weak coloring numbers."""

from dataclasses import dataclass
from math import comb

from .bits import bit_iter, to_mask
from .errors import BudgetExceeded, InputError, VerificationError
from .graph import Graph, ball_mask, is_geodesic, is_path

DEFAULT_WCOL_N = 10


@dataclass(frozen=True)
class Ordering:
    """rank[v] is the position of v; order lists vertices from smallest to largest."""

    rank: tuple

    def __post_init__(self):
        if sorted(self.rank) != list(range(len(self.rank))):
            raise InputError("rank must be a permutation")

    @classmethod
    def from_order(cls, order):
        rank = [0] * len(order)
        for i, v in enumerate(order):
            rank[v] = i
        return cls(tuple(rank))

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @property
    def order(self):
        out = [0] * len(self.rank)
        for v, r in enumerate(self.rank):
            out[r] = v
        return tuple(out)


def _reached_from(g, w, allowed, r):
    """Vertices reachable from w within r steps inside ``allowed`` (w included)."""
    return ball_mask(g, w, r, allowed | (1 << w))


def wreach_table(g, sigma, r):
    """wr[v] = WReach_r[g, sigma, v] as a bitset, for every v."""
    order = sigma.order
    wr = [0] * g.n
    later = g.full
    for w in order:
        reach = _reached_from(g, w, later, r)
        for v in bit_iter(reach):
            wr[v] |= 1 << w
        later &= ~(1 << w)
    return wr


def wreach(g, sigma, v, r):
    """Vertices w for which some path v..w of length ≤ r has σ-minimum w."""
    if r < 0:
        raise InputError("r must be non-negative")
    out = set()
    for w in range(g.n):
        if sigma.rank[w] <= sigma.rank[v]:
            allowed = to_mask(u for u in range(g.n) if sigma.rank[u] >= sigma.rank[w])
            if _reached_from(g, w, allowed, r) >> v & 1:
                out.add(w)
    return frozenset(out)


def wcol_of_ordering(g, sigma, r):
    if g.n == 0:
        return 0
    return max(x.bit_count() for x in wreach_table(g, sigma, r))


def per_vertex(g, sigma, r):
    return [x.bit_count() for x in wreach_table(g, sigma, r)]


def _greedy_order(g, r):
    """Place first whichever vertex weakly reaches the most still-unplaced vertices."""
    left = g.full
    order = []
    while left:
        best = max(bit_iter(left), key=lambda w: (_reached_from(g, w, left, r).bit_count(), -w))
        order.append(best)
        left &= ~(1 << best)
    return order


def wcol_exact(g, r, budget_n=DEFAULT_WCOL_N):
    """Minimum of wcol_r(g, σ) over all orderings, with the lexicographically least optimum.

    Branch-and-bound over prefixes. Placing w after the prefix S adds w to the
    weak reach of every vertex within distance r of w in g - S, so the counts
    only depend on S and are exact at every node.
    """
    if g.n > budget_n:
        raise BudgetExceeded(f"exact wcol limited to n <= {budget_n}")
    if g.n == 0:
        return 0, Ordering(())
    start = _greedy_order(g, r)
    best_val = wcol_of_ordering(g, Ordering.from_order(start), r) + 1
    best_order = None
    cache = {}

    def reach(w, left):
        key = (w, left)
        hit = cache.get(key)
        if hit is None:
            hit = cache[key] = _reached_from(g, w, left, r)
        return hit

    adj = g.adj

    def rec(prefix, left, counts, cur):
        # cur bounds the final value from below: placed counts are final and
        # every unplaced vertex will still add itself.
        nonlocal best_val, best_order
        if not left:
            best_val, best_order = cur, list(prefix)
            return
        for w in bit_iter(left):
            reached = reach(w, left)
            rest = left & ~(1 << w)
            new = list(counts)
            new[w] += 1
            # w's own count is final once it is placed
            worst = max(cur, new[w])
            for v in bit_iter(reached & ~(1 << w)):
                new[v] += 1
                if new[v] + 1 > worst:
                    worst = new[v] + 1
            if worst >= best_val:
                continue
            # whichever unplaced vertex comes last also reaches its neighbours
            if rest and r >= 1:
                last = min(new[v] + 1 + (adj[v] & rest).bit_count() for v in bit_iter(rest))
                if last >= best_val:
                    continue
                if last > worst:
                    worst = last
            prefix.append(w)
            rec(prefix, rest, new, worst)
            prefix.pop()

    rec([], g.full, [0] * g.n, 0)
    sigma = Ordering.from_order(best_order)
    if wcol_of_ordering(g, sigma, r) != best_val:
        raise VerificationError("branch-and-bound value disagrees with its ordering")
    return best_val, sigma


def back_neighbors(g, sigma, v):
    return [u for u in g.neighbors(v) if sigma.rank[u] < sigma.rank[v]]


def back_cliques(g, sigma, t):
    """Whether every earlier neighbourhood is a clique of size at most t."""
    for v in range(g.n):
        back = back_neighbors(g, sigma, v)
        if len(back) > t:
            return False
        for i, a in enumerate(back):
            for b in back[i + 1:]:
                if not g.has_edge(a, b):
                    return False
    return True


def verify_elimination_bound(g, sigma, t, r):
    ok = back_cliques(g, sigma, t)
    bound = comb(r + t, t)
    measured = wcol_of_ordering(g, sigma, r)
    if ok and measured > bound:
        raise VerificationError(f"wcol {measured} exceeds elimination bound {bound}")
    return {"back_cliques_ok": ok, "bound": bound, "measured": measured}


@dataclass(frozen=True)
class SubgeodesicCertificate:
    """``covered`` lies on ``geodesic``, a shortest path of the supergraph ``host_plus``."""

    host_plus: Graph
    geodesic: tuple
    covered: frozenset


def check_subgeodesic(g, cert):
    hp = cert.host_plus
    if hp.n < g.n:
        raise VerificationError("supergraph must contain V(G)")
    for u, v in g.edges:
        if not hp.has_edge(u, v):
            raise VerificationError(f"supergraph misses edge ({u},{v})")
    if not is_path(hp, list(cert.geodesic)) or not is_geodesic(hp, cert.geodesic):
        raise VerificationError("recorded path is not a geodesic of the supergraph")
    if not cert.covered <= set(cert.geodesic) or any(v >= g.n for v in cert.covered):
        raise VerificationError("covered set must lie on the geodesic and in V(G)")
    return True


def ball_geodesic_check(g, cert, r):
    """Largest |N^r[v] ∩ S| over v, with the per-vertex counts."""
    try:
        check_subgeodesic(g, cert)
    except VerificationError as exc:
        raise InputError(f"invalid certificate: {exc}") from None
    s = to_mask(cert.covered)
    counts = [(ball_mask(g, v, r) & s).bit_count() for v in range(g.n)]
    worst = max(counts, default=0)
    return {"max": worst, "bound": 2 * r + 1, "ok": worst <= 2 * r + 1, "per_vertex": counts}
