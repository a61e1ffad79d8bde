"""Ordered H-partitions whose parts split into a small set and a few subgeodesics."""

from dataclasses import dataclass, field

from ..bits import to_mask
from ..decomp import DisjointFamily, exact_treewidth, helly_search
from ..errors import InputError, PreconditionError, VerificationError
from ..graph import Graph, component_masks, shortest_path_between
from ..minors import DEFAULT_NODE_BUDGET, find_model
from ..partitions import HPartition, PartSplit, hpartition_problems
from ..wcol import Ordering, check_subgeodesic, wcol_of_ordering
from .checks import elimination_problems, suffix_certificates
from .chordal import chordal_parts
from .dichotomy import cut_core, join_pattern, split_off
from .lgraph import Dense, LGraph
from .main import DEFAULT_MAX_INSTANCES, Context, _clique, _pair, attached_members, raise_disjoint
from .params import eps_impl, tau, wcol_bound


@dataclass
class Split:
    """A/B split in labels; paths are the geodesics covering B."""

    a: frozenset
    b: frozenset
    paths: tuple = ()


@dataclass
class OPiece:
    parts: list
    splits: list
    edges: set = field(default_factory=set)

    def append(self, part, split):
        self.parts.append(part)
        self.splits.append(split)


def _connect(lg, rest, x):
    """Grow x into a connected set using shortest paths inside g[rest]; returns (x, paths)."""
    dn = Dense(lg.induced(rest))
    xm = dn.mask(x)
    paths = []
    while True:
        start = dn.pos[min(dn.back(xm))]
        cur = next(c for c in _components(dn.g, xm) if c >> start & 1)
        if cur == xm:
            break
        p = shortest_path_between(dn.g, cur, xm & ~cur)
        if p is None:
            raise VerificationError("hitting set cannot be connected inside g - R")
        paths.append(tuple(dn.labels[v] for v in p))
        xm |= to_mask(p)
    return dn.back(xm), paths


def _components(g, mask):
    return component_masks(g, mask)


def _hitting(ctx, h, d, k, lg, roots, rest):
    """(A, B, geodesics) with X = A ∪ B connected and meeting every attached model."""
    pattern = join_pattern(k + 1, h - 1, d)
    root_sets = [frozenset({r}) for r in roots]
    sub, full, within, models = attached_members(ctx, lg, root_sets, rest, pattern, k + 1)
    width, td = exact_treewidth(sub.g)
    if width > ctx.t - 1:
        raise PreconditionError(f"treewidth {width} is not below t={ctx.t}")
    out = helly_search(td, d, within)
    if isinstance(out, DisjointFamily):
        raise_disjoint(full, root_sets, models, [to_mask(m) for m in out.members], h, d)
    a = frozenset()
    for node in out.nodes:
        a |= sub.back(td.bags[node])
    if not a:
        x0 = min(rest)
        return frozenset(), frozenset({x0}), ((x0,),)
    x, paths = _connect(lg, rest, a)
    return a, x - a, tuple(paths)


def _base(ctx, torso, k):
    if not torso.adj:
        return OPiece([], [])
    dn = Dense(torso)
    try:
        parts, edges, geos = chordal_parts(dn.g, 2 * k + 1)
    except PreconditionError as exc:
        raise PreconditionError(f"torso is not K_{2 * k + 1}-minor-free") from exc
    out = OPiece([dn.back(p) for p in parts], [], set(edges))
    for p, gs in zip(out.parts, geos):
        out.splits.append(Split(frozenset(), p, tuple(tuple(dn.labels[v] for v in q) for q in gs)))
    return out


def _glue(piece, sub, targets):
    idx = list(targets) + [len(piece.parts) + i for i in range(len(sub.parts) - len(targets))]
    piece.parts += sub.parts[len(targets):]
    piece.splits += sub.splits[len(targets):]
    for a, b in sub.edges:
        if idx[a] != idx[b]:
            piece.edges.add(_pair(idx[a], idx[b]))


def _wcol(ctx, h, d, k, lg, roots):
    ctx.tick()
    verts = frozenset(lg.adj)
    if h == 1 and k == 0:
        if len(verts) > d - 1:
            raise PreconditionError(f"{d} vertices form a U_1,{d} model",
                                    evidence={"branch_sets": [[v] for v in sorted(verts)[:d]]})
        return OPiece([verts], [Split(verts, frozenset())]) if verts else OPiece([], [])
    piece = OPiece([frozenset({r}) for r in roots], [None] * len(roots))
    rest = verts - set(roots)
    if len(rest) <= k:
        if rest:
            piece.append(rest, Split(rest, frozenset()))
        piece.edges = _clique(len(piece.parts))
        return piece
    roots = list(roots)
    for s in sorted(rest)[: k - len(roots)]:
        roots.append(s)
        piece.append(frozenset({s}), Split(frozenset({s}), frozenset()))
    rest = rest - set(roots)
    piece.edges = _clique(k)
    comps = lg.components(rest)
    if len(comps) > 1:
        for comp in comps:
            sub = _wcol(ctx, h, d, k, lg.induced(comp | set(roots)), roots)
            _glue(piece, sub, range(k))
        return piece

    a, b, geos = _hitting(ctx, h, d, k, lg, roots, rest)
    x = a | b
    core, _ = cut_core(lg.remove(x), roots, k + 1, h - 1, d, ctx.budget)
    pers, torso = split_off(lg.remove(x), core, roots)
    h0 = _base(ctx, torso, k) if h == 1 else _wcol(ctx, h - 1, d + 2 * k, 2 * k + 1, torso, [])

    z = len(piece.parts)
    piece.append(x, Split(a, b, geos))
    piece.edges = _clique(k + 1)
    off = len(piece.parts)
    piece.parts += h0.parts
    piece.splits += h0.splits
    piece.edges |= {(i, off + j) for i in range(k + 1) for j in range(len(h0.parts))}
    piece.edges |= {(off + p, off + q) for p, q in h0.edges}
    where0 = {v: off + j for j, p in enumerate(h0.parts) for v in p}
    rpos = {r: j for j, r in enumerate(roots)}
    for comp, nb in pers:
        zl = ctx.fresh()
        gi = lg.induced(comp | nb | x).identify(x, zl)
        ri = sorted(nb) + [zl]
        targets = [rpos[v] if v in rpos else where0[v] for v in sorted(nb)] + [z]
        sub = _wcol(ctx, h, d, k, gi, ri)
        _glue(piece, sub, targets)
    return piece


@dataclass
class WcolResult:
    hp: HPartition
    roots: tuple
    t: int


def wcol_partition(g, h, d, k=0, roots=(), budget=DEFAULT_NODE_BUDGET,
                   max_instances=DEFAULT_MAX_INSTANCES, check_precondition=True, verify=True):
    """Ordered partition; part i is split into A (small) and B (covered by geodesics)."""
    if h < 1 or d < 1 or k < 0:
        raise InputError("need h, d >= 1 and k >= 0")
    roots = tuple(roots)
    if len(roots) > k or len(set(roots)) != len(roots) or any(not (0 <= r < g.n) for r in roots):
        raise InputError("roots must be at most k distinct vertices")
    width, _ = exact_treewidth(g)
    t = width + 1
    if check_precondition:
        model = find_model(g, join_pattern(k, h, d), budget=budget)
        if model is not None:
            raise PreconditionError(
                f"g contains K_{k} ⊕ U_{h},{d}",
                evidence={"branch_sets": [sorted(m) for m in model.branch_sets]})
    ctx = Context(g.n, t, budget, max_instances)
    piece = _wcol(ctx, h, d, k, LGraph.from_graph(g), list(roots))
    ab = []
    for s in piece.splits:
        if s is None:
            ab.append(None)
            continue
        extra = tuple(tuple(e for e in zip(p, p[1:]) if not g.has_edge(*e)) for p in s.paths)
        ab.append(PartSplit(s.a, s.b, s.paths, extra))
    n = len(piece.parts)
    hp = HPartition(Graph(n, sorted(piece.edges)), tuple(piece.parts), tuple(range(n)), tuple(ab))
    res = WcolResult(hp, roots, t)
    if verify:
        report = check_wcol(g, res, h, d, k)
        if not report["ok"]:
            bad = [c["name"] for c in report["checks"] if not c["ok"]]
            raise VerificationError(f"wcol partition failed checks {bad}")
    return res


def check_wcol(g, res, h, d, k):
    """The five properties of the ordered partition, each as a named check."""
    hp = res.hp
    eps = eps_impl(h, d, k, res.t)
    problems = hpartition_problems(g, hp)
    checks = [{"name": "h_partition", "ok": not problems and hp.order is not None and hp.ab is not None,
               "problems": problems}]
    if not checks[0]["ok"]:
        return {"ok": False, "checks": checks, "eps": eps}
    order = hp.order
    bad = elimination_problems(hp.h_graph, order)
    checks.append({"name": "elimination_order", "ok": not bad, "bad": bad})
    ell = len(res.roots)
    xs = order[:ell]
    checks.append({"name": "roots_clique",
                   "ok": all(hp.h_graph.has_edge(a, b) for i, a in enumerate(xs) for b in xs[i + 1:])})
    tw_h, _ = exact_treewidth(hp.h_graph)
    checks.append({"name": "treewidth", "ok": tw_h <= tau(h, k), "measured": tw_h, "bound": tau(h, k)})
    checks.append({"name": "roots_are_parts",
                   "ok": all(hp.parts[x] == {r} for x, r in zip(xs, res.roots))})
    split_ok, worst_a, worst_geo, why = True, 0, 0, []
    for i in range(ell, len(order)):
        x = order[i]
        s = hp.ab[x]
        if s is None or s.a | s.b != hp.parts[x] or s.a & s.b:
            split_ok = False
            why.append(f"part {x}: A, B do not split the part")
            continue
        worst_a = max(worst_a, len(s.a))
        worst_geo = max(worst_geo, len(s.geodesics))
        covered = set()
        for p in s.geodesics:
            covered |= set(p)
        if not s.b <= covered or len(s.extra_edges) != len(s.geodesics):
            split_ok = False
            why.append(f"part {x}: B not covered by its geodesics")
            continue
        suffix, certs = suffix_certificates(g, hp, i)
        for c in certs:
            try:
                check_subgeodesic(suffix, c)
            except (VerificationError, InputError) as exc:
                split_ok = False
                why.append(f"part {x}: {exc}")
    checks.append({"name": "geodesic_split", "ok": split_ok and worst_a <= eps and worst_geo <= eps,
                   "max_a": worst_a, "max_geodesics": worst_geo, "bound": eps, "problems": why})
    return {"ok": all(c["ok"] for c in checks), "checks": checks, "eps": eps}


def wcol_order(g, hp, r, h, d, t, k=0):
    """Vertex ordering by part rank, A before B inside a part, with the measured-vs-bound report."""
    if hp.ab is None or hp.order is None:
        raise InputError("the partition carries no ordering or A/B split")
    seq = []
    for x in hp.order:
        s = hp.ab[x]
        if s is None:
            seq += sorted(hp.parts[x])
        else:
            seq += sorted(s.a) + sorted(s.b)
    sigma = Ordering.from_order(seq)
    measured = wcol_of_ordering(g, sigma, r)
    bound = wcol_bound(h, d, t, r, k)
    if measured > bound:
        raise VerificationError(f"wcol {measured} exceeds the bound {bound}")
    return sigma, {"r": r, "measured": measured, "bound": bound, "ok": True}
