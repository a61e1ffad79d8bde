"""Bounded-treewidth H-partitions of graphs excluding K_k ⊕ U_{h,d}, built by induction on h."""

from dataclasses import dataclass, field

from ..bits import to_mask
from ..decomp import DisjointFamily, capture_interfaces, exact_treewidth, helly_search, make_natural
from ..errors import BudgetExceeded, InputError, PreconditionError, VerificationError
from ..graph import Graph
from ..minors import DEFAULT_NODE_BUDGET, find_attached_model, find_model
from ..partitions import HPartition, hpartition_problems
from .params import c_param, singleton_tw_bound, tau
from .chordal import chordal_parts
from .dichotomy import assemble_from_attached, cut_core, join_pattern, split_off
from .lgraph import Dense, LGraph

DEFAULT_MAX_INSTANCES = 10 ** 5
STRATEGIES = ("singleton", "chordal")


@dataclass
class Piece:
    """Parts of one instance; the first ones are the root sets, in order."""

    parts: list
    edges: set = field(default_factory=set)


def _clique(n):
    return {(i, j) for i in range(n) for j in range(i + 1, n)}


def _pair(a, b):
    return (a, b) if a < b else (b, a)


class Context:
    def __init__(self, n, t, budget=DEFAULT_NODE_BUDGET, max_instances=DEFAULT_MAX_INSTANCES,
                 strategy="singleton"):
        if strategy not in STRATEGIES:
            raise InputError(f"unknown base strategy {strategy!r}")
        self.t = t
        self.budget = budget
        self.max_instances = max_instances
        self.strategy = strategy
        self.instances = 0
        self.next_label = n

    def fresh(self):
        self.next_label += 1
        return self.next_label - 1

    def tick(self):
        self.instances += 1
        if self.instances > self.max_instances:
            raise BudgetExceeded(f"more than {self.max_instances} recursive instances")


def attached_members(ctx, lg, roots, rest, pattern, a):
    """Oracle for the family of connected subgraphs of g[rest] holding an attached pattern model.

    Returns (sub, oracle, models): sub is the dense view of g[rest]; oracle maps
    a bitset over sub to the vertex set of such a model inside it (or None);
    models remembers the branch sets behind every returned member.
    """
    sub = Dense(lg.induced(rest))
    full = Dense(lg)
    root_ids = [full.ids(sorted(r)) for r in roots]
    models = {}

    def within(mask):
        allowed = full.mask(sub.back(mask))
        am = find_attached_model(full.g, pattern, root_ids, a=a, allowed=allowed,
                                 budget=ctx.budget)
        if am is None:
            return None
        sets = [full.back(b) for b in am.model.branch_sets]
        member = sub.mask(frozenset().union(*sets))
        models[member] = sets
        return member

    return sub, full, within, models


def raise_disjoint(full, roots, models, members, h, d):
    """Turn too many disjoint attached models into the forbidden model and raise."""
    id_models = [[full.ids(s) for s in models[m]] for m in members]
    root_ids = [full.ids(sorted(r)) for r in roots]
    model = assemble_from_attached(full.g, root_ids, id_models, h, d)
    raise PreconditionError(
        f"found a model of K_{len(roots)} ⊕ U_{h},{d}",
        evidence={"branch_sets": [sorted(full.back(b)) for b in model.branch_sets]})


def _hitting_set(ctx, h, d, k, lg, roots, rest):
    pattern = join_pattern(k + 1, h - 1, d)
    sub, full, within, models = attached_members(ctx, lg, roots, rest, pattern, k + 1)
    width, td = exact_treewidth(sub.g)
    if width > ctx.t - 1:
        raise PreconditionError(f"treewidth {width} is not below t={ctx.t}")
    td = make_natural(sub.g, td)
    out = helly_search(td, (d - 1) * 2 ** k + 1, within)
    if isinstance(out, DisjointFamily):
        raise_disjoint(full, roots, models, [to_mask(m) for m in out.members], h, d)
    if not out.nodes:
        return frozenset()
    x, _ = capture_interfaces(sub.g, td, list(out.nodes))
    return sub.back(x)


def _base(ctx, torso, k):
    """Partition of the h=1 torso, which excludes K_{2k+1}."""
    if not torso.adj:
        return Piece([], set())
    if ctx.strategy == "singleton":
        labels = torso.vertices()
        pos = {v: i for i, v in enumerate(labels)}
        return Piece([frozenset({v}) for v in labels],
                     {_pair(pos[u], pos[v]) for u, v in torso.edges()})
    dn = Dense(torso)
    parts, edges, _ = chordal_parts(dn.g, 2 * k + 1)
    return Piece([dn.back(p) for p in parts], set(edges))


def _main(ctx, h, d, k, lg, roots):
    ctx.tick()
    verts = frozenset(lg.adj)
    if h == 1 and k == 0:
        if len(verts) > d - 1:
            raise PreconditionError(f"{d} vertices form a U_1,{d} model",
                                    evidence={"branch_sets": [[v] for v in sorted(verts)[:d]]})
        return Piece([verts] if verts else [])
    roots = [frozenset(r) for r in roots]
    rest = verts - frozenset().union(*roots)
    if len(rest) < k:
        parts = roots + ([rest] if rest else [])
        return Piece(parts, _clique(len(parts)))
    extra = sorted(rest)[: k - len(roots)]
    roots = roots + [frozenset({s}) for s in extra]
    rest = rest - set(extra)
    used = frozenset().union(*roots) if roots else frozenset()
    if not rest:
        return Piece(list(roots), _clique(k))
    comps = lg.components(rest)
    if len(comps) > 1:
        piece = Piece(list(roots), _clique(k))
        for comp in comps:
            sub = _main(ctx, h, d, k, lg.induced(comp | used), roots)
            _merge(piece, sub, list(range(k)))
        return piece

    x = _hitting_set(ctx, h, d, k, lg, roots, rest)
    gp = lg.remove(x)
    rlab = []
    for r in roots:
        lab = ctx.fresh()
        gp = gp.identify(r, lab)
        rlab.append(lab)
    core, _ = cut_core(gp, rlab, k + 1, h - 1, d, ctx.budget)
    pers, torso = split_off(gp, core, rlab)
    h0 = _base(ctx, torso, k) if h == 1 else _main(ctx, h - 1, d + 2 * k, 2 * k + 1, torso, [])

    piece = Piece(list(roots))
    z = None
    if x:
        z = len(piece.parts)
        piece.parts.append(x)
    top = len(piece.parts)
    piece.edges = _clique(top)
    off = top
    piece.parts += h0.parts
    piece.edges |= {(i, off + j) for i in range(top) for j in range(len(h0.parts))}
    piece.edges |= {(off + a, off + b) for a, b in h0.edges}
    where0 = {v: off + j for j, p in enumerate(h0.parts) for v in p}
    rpos = {lab: j for j, lab in enumerate(rlab)}
    lower = lg.components(rest - x)
    for comp, nb in pers:
        d_i = next(c for c in lower if comp <= c)
        xs = [c for c in lg.components(rest - d_i) if lg.neighborhood(c) & d_i]
        if len(xs) > 2:
            raise VerificationError("a component sees more than two sides of X")
        gi = lg
        xlabs = []
        for c in xs:
            lab = ctx.fresh()
            gi = gi.identify(c, lab)
            xlabs.append(lab)
        ri = [roots[rpos[v]] for v in sorted(nb) if v in rpos]
        targets = [rpos[v] for v in sorted(nb) if v in rpos]
        for u in sorted(nb - rpos.keys()):
            ri.append(frozenset({u}))
            targets.append(where0[u])
        if xlabs:
            ri.append(frozenset(xlabs))
            targets.append(z)
        gi = gi.induced(comp | frozenset().union(*ri))
        sub = _main(ctx, h, d, k, gi, ri)
        _merge(piece, sub, targets)
    return piece


def _merge(piece, sub, targets):
    """Glue sub onto piece, identifying sub's root parts with the given part indices."""
    idx = list(targets) + [len(piece.parts) + i for i in range(len(sub.parts) - len(targets))]
    piece.parts += sub.parts[len(targets):]
    for a, b in sub.edges:
        if idx[a] != idx[b]:
            piece.edges.add(_pair(idx[a], idx[b]))


def run_main(g, h, d, k, t, roots=(), strategy="singleton", budget=DEFAULT_NODE_BUDGET,
             max_instances=DEFAULT_MAX_INSTANCES):
    """Raw (parts, H edges) for the main partition of a Graph."""
    if h < 1 or d < 1 or t < 1 or k < 0:
        raise InputError("need h, d, t >= 1 and k >= 0")
    roots = [frozenset(r) for r in roots]
    if len(roots) > k:
        raise InputError("at most k root sets")
    seen = set()
    for r in roots:
        if not r or len(r) > 2 or r & seen or any(not (0 <= v < g.n) for v in r):
            raise InputError("root sets must be disjoint, non-empty, of size at most 2")
        seen |= r
    ctx = Context(g.n, t, budget, max_instances, strategy)
    piece = _main(ctx, h, d, k, LGraph.from_graph(g), roots)
    return piece.parts, sorted(piece.edges)


@dataclass
class MainResult:
    hp: HPartition
    distinguished: tuple
    roots: tuple
    strategy: str


def check_main_preconditions(g, h, d, k, t, budget=DEFAULT_NODE_BUDGET):
    """Raise PreconditionError unless tw(g) < t and g excludes K_k ⊕ U_{h,d}."""
    width, _ = exact_treewidth(g)
    if width >= t:
        raise PreconditionError(f"treewidth {width} is not below t={t}")
    model = find_model(g, join_pattern(k, h, d), budget=budget)
    if model is not None:
        raise PreconditionError(f"g contains K_{k} ⊕ U_{h},{d}",
                                evidence={"branch_sets": [sorted(b) for b in model.branch_sets]})


def main_partition(g, h, d, k, t, roots=(), strategy="singleton", budget=DEFAULT_NODE_BUDGET,
                   max_instances=DEFAULT_MAX_INSTANCES, check_precondition=True, verify=True):
    """H-partition of bounded treewidth and width, with the root sets as the first parts."""
    if check_precondition:
        check_main_preconditions(g, h, d, k, t, budget)
    parts, edges = run_main(g, h, d, k, t, roots, strategy, budget, max_instances)
    res = MainResult(HPartition(Graph(len(parts), edges), tuple(parts)),
                     tuple(range(len(roots))), tuple(frozenset(r) for r in roots), strategy)
    if verify:
        report = check_main(g, res, h, d, k, t)
        if not report["ok"]:
            bad = [c["name"] for c in report["checks"] if not c["ok"]]
            raise VerificationError(f"main partition failed checks {bad}")
    return res


def main_bounds(h, d, k, t, strategy):
    """(tw bound, width bound or None) certified by the chosen base strategy."""
    if strategy == "singleton":
        return singleton_tw_bound(h, k, t), c_param(h, d, k) * t
    return tau(h, k), None


def check_main(g, res, h, d, k, t):
    """The four properties of the main partition, each as a named check."""
    hp = res.hp
    problems = hpartition_problems(g, hp)
    checks = [{"name": "h_partition", "ok": not problems, "problems": problems}]
    tw_bound, width_bound = main_bounds(h, d, k, t, res.strategy)
    tw_h, _ = exact_treewidth(hp.h_graph)
    checks.append({"name": "treewidth", "ok": tw_h <= tw_bound, "measured": tw_h, "bound": tw_bound})
    checks.append({"name": "width", "ok": width_bound is None or hp.width <= width_bound,
                   "measured": hp.width, "bound": width_bound,
                   "flag": None if width_bound is not None else "width unbounded for the chordal base"})
    ok = len(res.distinguished) == len(res.roots) and all(
        hp.parts[x] == r for x, r in zip(res.distinguished, res.roots))
    checks.append({"name": "roots_are_parts", "ok": ok})
    xs = res.distinguished
    clique = all(hp.h_graph.has_edge(a, b) for i, a in enumerate(xs) for b in xs[i + 1:])
    checks.append({"name": "roots_clique", "ok": clique})
    return {"ok": all(c["ok"] for c in checks), "checks": checks}
