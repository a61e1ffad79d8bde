"""Attached models versus small separations, rooted cliques and cut decompositions."""

from dataclasses import dataclass

from ..errors import InputError, PreconditionError, VerificationError
from ..generators import complete_dary_forest_parents, u_graph
from ..graph import Graph, complete_graph, is_connected, join
from ..minors import (AttachedModel, Linkage, Model, Separation, apex_count,
                      check_attached_model, check_model, check_separation,
                      find_attached_model, find_model, menger, plus_clique)
from .lgraph import Dense, LGraph


def join_pattern(a, h, d):
    """K_a ⊕ U_{h,d} with the apex vertices numbered 0..a-1."""
    return join(complete_graph(a), u_graph(h, d) if h > 0 else Graph(0))


@dataclass
class Attached:
    sets: dict    # pattern vertex -> branch set (labels)
    attach: dict  # root label -> pattern vertex


@dataclass
class Split:
    a: frozenset
    b: frozenset
    z: int


def _menger(g, s, t, k):
    """menger on an LGraph; returns a Linkage or Separation in labels."""
    dn = Dense(g)
    out = menger(dn.g, dn.ids(s), dn.ids(t), k)
    if isinstance(out, Linkage):
        return Linkage(tuple(tuple(dn.labels[v] for v in p) for p in out.paths))
    return Separation(dn.back(out.side_a), dn.back(out.side_b))


def _contractible(g, rset, sets):
    for x in sorted(sets):
        u_set = sets[x]
        if len(u_set) > 1 and not u_set <= rset:
            for u in sorted(u_set - rset):
                inside = sorted(g.adj[u] & u_set)
                if inside:
                    return x, u, inside[0]
    return None


def _aos(g, roots, a, n_pattern, sets):
    """The dichotomy on a model of K_a ⊕ H in g^{+R} given as sets[x]."""
    k = len(roots)
    rset = frozenset(roots)
    if k == 0:
        return Attached(dict(sets), {})
    step = _contractible(g, rset, sets)
    if step is None:
        return _aos_base(g, roots, a, n_pattern, sets)
    x, u, v = step
    g1 = g.contract(u, v)
    sets1 = {y: s - {u} for y, s in sets.items()}
    out = _aos(g1, roots, a, n_pattern, sets1)
    if isinstance(out, Attached):
        new = dict(out.sets)
        if v in rset:
            y = out.attach[v]
            if not g.adj[v] & new[y]:
                new[y] = new[y] | {u}
        else:
            for y, s in new.items():
                if v in s:
                    new[y] = s | {u}
        return Attached(new, dict(out.attach))

    def grow(side):
        return side | {u} if v in side else side

    side_a, side_b = grow(out.a), grow(out.b)
    if len(side_a & side_b) <= k - 1:
        return Split(side_a, side_b, out.z)
    r2 = side_a & side_b
    res = _menger(g.induced(side_a), roots, r2, k)
    if isinstance(res, Separation):
        return Split(res.side_a, res.side_b | side_b, out.z)
    sets_b = {y: s & side_b for y, s in sets.items()}
    inner = _aos(g.induced(side_b), sorted(r2), a, n_pattern, sets_b)
    if isinstance(inner, Split):
        return Split(side_a | inner.a, inner.b, inner.z)
    new = dict(inner.sets)
    attach = {}
    for p in res.paths:
        r, r_end = p[0], p[-1]
        y = inner.attach[r_end]
        new[y] = new[y] | (set(p) - {r})
        attach[r] = y
    return Attached(new, attach)


def _aos_base(g, roots, a, n_pattern, sets):
    """Every branch set is a singleton or lies inside R."""
    k = len(roots)
    rset = frozenset(roots)
    m = set()
    for s in sets.values():
        if not s & rset:
            m |= s
    res = _menger(g, roots, m, k)
    if isinstance(res, Separation):
        for z in range(a):
            if sets[z] <= m and not sets[z] & res.side_a:
                return Split(res.side_a, res.side_b, z)
        raise VerificationError("no apex branch set lies beyond the separation")
    on_paths = set()
    for p in res.paths:
        on_paths |= set(p)
    on_paths -= rset
    w1 = [x for x in sorted(sets) if sets[x] <= rset]
    w2 = [x for x in sorted(sets) if x not in w1 and sets[x] <= on_paths]
    w3 = [x for x in sorted(sets) if x not in w1 and x not in w2]
    w2h = [x for x in w2 if x >= a]
    w3k = [x for x in w3 if x < a]
    if len(w2h) > len(w3k):
        raise VerificationError("not enough spare apex vertices")
    f = dict(zip(w2h, w3k))
    kept = [x for x in w2 + w3 if x not in f]
    new = {x: sets[x] for x in kept}
    for x, y in f.items():
        new[y] = new[y] | sets[x]
    owner = {}
    for x in w2:
        for v in sets[x]:
            owner[v] = f.get(x, x)
    attach = {}
    for p in res.paths:
        y = owner[p[-1]]
        new[y] = new[y] | set(p[1:])
        attach[p[0]] = y
    return Attached(new, attach)


def attached_or_separation(g, roots, pattern, model, a=None):
    """Attached model of K_{a'} ⊕ H' (a' ≥ a-k, H' = H minus ≤ 2k vertices) or a separation.

    ``model`` is a Model of ``pattern`` = K_a ⊕ H in g^{+R}. Returns
    ("attached", kept pattern vertices, AttachedModel on pattern[kept]) or
    ("separation", Separation, z).
    """
    roots = sorted(set(roots))
    k = len(roots)
    a = apex_count(pattern) if a is None else a
    if a < 2 * k:
        raise InputError("need a >= 2k")
    if k == 0:
        kept = list(range(pattern.n))
        am = AttachedModel(model, (), (), a)
        check_attached_model(g, pattern, am)
        return "attached", kept, am
    check_model(plus_clique(g, roots), pattern, model)
    lg = LGraph.from_graph(g)
    sets = {x: frozenset(b) for x, b in enumerate(model.branch_sets)}
    out = _aos(lg, roots, a, pattern.n, sets)
    if isinstance(out, Split):
        sep = Separation(frozenset(out.a), frozenset(out.b))
        check_separation(g, sep, roots, ())
        if sep.order > k - 1 or not model.branch_sets[out.z] <= sep.side_b - sep.side_a:
            raise VerificationError("separation outcome fails its certificate")
        return "separation", sep, out.z
    kept = sorted(out.sets)
    sub, _ = pattern.induced(kept)
    pos = {x: i for i, x in enumerate(kept)}
    a2 = sum(1 for x in kept if x < a)
    am = AttachedModel(Model(tuple(out.sets[x] for x in kept)),
                       tuple(frozenset({r}) for r in roots),
                       tuple(pos[out.attach[r]] for r in roots), a2)
    check_attached_model(g, sub, am)
    if a2 < a - k or pattern.n - len(kept) - (a - a2) > 2 * k:
        raise VerificationError("attached outcome lost too many pattern vertices")
    return "attached", kept, am


# ---------------------------------------------------------------- rooted cliques

def _rcs(g, roots, sets):
    """(A, B, attach) with attach[r] the branch set of a K_|A∩B| model in B - A touching r."""
    k = len(roots)
    allv = frozenset(g.adj)
    if k == 1:
        r = roots[0]
        w = min(g.adj[r])
        return frozenset({r}), allv, {r: frozenset({w})}
    out = _aos(g, roots, 2 * k, 2 * k, {x: s for x, s in enumerate(sets)})
    if isinstance(out, Attached):
        return frozenset(roots), allv, {r: frozenset(out.sets[out.attach[r]]) for r in roots}
    e = next(c for c in g.induced(out.b).components() if sets[out.z] <= c)
    r2 = sorted(out.a & e)
    sub_sets = [s & e for s in sets[: 2 * len(r2)]]
    a2, b2, att = _rcs(g.induced(e), r2, sub_sets)
    return (allv - e) | a2, b2, att


def rooted_clique_separation(g, roots, model=None):
    """Separation (A,B) of order l ≤ k with R ⊆ A and an (A∩B)-attached K_l model in B - A.

    ``model`` is a K_{2k} model in g^{+R}; it is searched for when omitted.
    Returns (Separation, AttachedModel).
    """
    roots = sorted(set(roots))
    k = len(roots)
    if k < 1:
        raise InputError("need at least one root")
    if not is_connected(g):
        raise InputError("graph must be connected")
    plus = plus_clique(g, roots)
    if model is None:
        model = find_model(plus, complete_graph(2 * k))
        if model is None:
            raise PreconditionError(f"K_{2 * k} is not a minor of g with R completed",
                                    evidence={"pattern": f"K_{2 * k}", "found": False})
    check_model(plus, complete_graph(2 * k), model)
    a_side, b_side, att = _rcs(LGraph.from_graph(g), roots, [frozenset(b) for b in model.branch_sets])
    sep = Separation(frozenset(a_side), frozenset(b_side))
    check_separation(g, sep, roots, ())
    inter = sorted(sep.side_a & sep.side_b)
    am = AttachedModel(Model(tuple(att[r] for r in inter)),
                       tuple(frozenset({r}) for r in inter), tuple(range(len(inter))), len(inter))
    check_attached_model(g.induced(range(g.n))[0], complete_graph(len(inter)), am)
    if not am.model.union() <= sep.side_b - sep.side_a or not 1 <= len(inter) <= k:
        raise VerificationError("rooted clique certificate fails")
    return sep, am


# ---------------------------------------------------------------- pigeonhole assembly

def _tree_map(parent_small, root_small, parent_big, root_big, arity_small, arity_big):
    """Embed the complete tree under root_small into the one under root_big, child i to child i."""
    ch_small = {}
    for v, p in enumerate(parent_small):
        if p is not None:
            ch_small.setdefault(p, []).append(v)
    ch_big = {}
    for v, p in enumerate(parent_big):
        if p is not None:
            ch_big.setdefault(p, []).append(v)
    out = {}
    stack = [(root_small, root_big)]
    while stack:
        s, b = stack.pop()
        out[s] = b
        kids_s = ch_small.get(s, [])
        kids_b = ch_big.get(b, [])
        if len(kids_s) > len(kids_b):
            raise VerificationError("tree shapes do not nest")
        for cs, cb in zip(kids_s, kids_b):
            stack.append((cs, cb))
    return out


def assemble_from_attached(g, roots, models, h, d):
    """Combine attached models of K_{k+1} ⊕ U_{h-1,d} into a model of K_k ⊕ U_{h,d}.

    ``models`` are branch-set lists (apex j attached to roots[j] for j < k).
    Needs d of them sharing the same choice of root vertices s_j, which
    (d-1)2^k + 1 pairwise disjoint models guarantee.
    """
    k = len(roots)
    roots = [frozenset(r) for r in roots]
    groups = {}
    chosen = None
    for sets in models:
        key = []
        for j in range(k):
            touch = sorted(v for v in roots[j] if g.adj[v] & _mask(sets[j]))
            if not touch:
                raise InputError("model is not attached to its root set")
            key.append(touch[0])
        key = tuple(key)
        groups.setdefault(key, []).append(sets)
        if len(groups[key]) == d:
            chosen = (key, groups[key])
            break
    if chosen is None:
        raise InputError("no d models share their root vertices")
    key, picked = chosen
    size_small = len(complete_dary_forest_parents(h - 1, d)) if h > 1 else 0
    big = complete_dary_forest_parents(h, d)
    per_tree = len(big) // d
    small = complete_dary_forest_parents(h - 1, d) if h > 1 else []
    per_small = size_small // d if d else 0
    branch = [set() for _ in range(k + len(big))]
    for j in range(k):
        branch[j].add(key[j])
    for i, sets in enumerate(picked):
        for j in range(k):
            branch[j] |= set(sets[j])
        base = i * per_tree
        branch[k + base] |= set(sets[k])
        kids = [v for v, p in enumerate(big) if p == base]
        for c in range(d if h > 1 else 0):
            emb = _tree_map(small, c * per_small, big, kids[c], d, d)
            for sv, bv in emb.items():
                branch[k + bv] |= set(sets[k + 1 + sv])
    model = Model(tuple(frozenset(b) for b in branch))
    check_model(g, join_pattern(k, h, d), model)
    return model


def _mask(vs):
    m = 0
    for v in vs:
        m |= 1 << v
    return m


# ---------------------------------------------------------------- cut decomposition

def _evidence_from_attached(lg, roots, kept, sets, attach, a, h, d):
    """An R-attached K_a ⊕ U_{h,d} model inside an attached K_{a'} ⊕ (U_{h,d+2k} - W) model."""
    k = len(roots)
    big_d = d + 2 * k
    n_apex_big = a + k
    apex_kept = [x for x in kept if x < n_apex_big]
    attached_apex = [attach[r] for r in roots]
    rest_apex = [x for x in apex_kept if x not in attached_apex]
    apex = attached_apex + rest_apex[: a - k]
    if len(apex) < a:
        raise VerificationError("too few apex branch sets")
    big = complete_dary_forest_parents(h, big_d) if h > 0 else []
    per_big = len(big) // big_d if big_d else 0
    keptset = set(kept)
    trees = [i for i in range(big_d)
             if all(n_apex_big + i * per_big + j in keptset for j in range(per_big))][:d]
    if len(trees) < d and h > 0:
        raise VerificationError("fewer than d untouched trees")
    small = complete_dary_forest_parents(h, d) if h > 0 else []
    per_small = len(small) // d if d else 0
    branch = [sets[x] for x in apex]
    u_sets = [None] * len(small)
    for c, i in enumerate(trees):
        emb = _tree_map(small, c * per_small, big, i * per_big, d, big_d)
        for sv, bv in emb.items():
            u_sets[sv] = sets[n_apex_big + bv]
    branch += u_sets
    return {"pattern": {"a": a, "h": h, "d": d},
            "roots": [[r] for r in roots],
            "branch_sets": [sorted(b) for b in branch],
            "attachment": list(range(k))}


def cut_core(lg, roots, a, h, d, budget):
    """Vertex set of the core C for g without an R-attached K_a ⊕ U_{h,d} model.

    Follows the induction: while g - R has a K_{a+k} ⊕ U_{h,d+2k} model, use
    the dichotomy to find a small separation and cut the far side off, keeping
    a clique on its attachment set.
    """
    k = len(roots)
    rset = frozenset(roots)
    g = lg
    if k == 0:
        return frozenset(g.adj), g
    pattern = join_pattern(a + k, h, d + 2 * k)
    while True:
        dn = Dense(g.remove(rset))
        found = find_model(dn.g, pattern, budget=budget)
        if found is None:
            return frozenset(g.adj), g
        sets = {x: dn.back(b) for x, b in enumerate(found.branch_sets)}
        out = _aos(g, list(roots), a + k, pattern.n, sets)
        if isinstance(out, Attached):
            ev = _evidence_from_attached(g, list(roots), sorted(out.sets), out.sets,
                                         out.attach, a, h, d)
            raise PreconditionError("found an R-attached model that should not exist", evidence=ev)
        far = next(c for c in g.components(out.b - out.a) if sets[out.z] <= c)
        s = g.neighborhood(far)
        if not s:
            g = g.remove(far)
            continue
        host = g.induced(far | s)
        sub_sets = [sets[x] & (far | s) for x in range(2 * len(s))]
        e_side, f_side, att = _rcs(host, sorted(s), sub_sets)
        touched = frozenset().union(*att.values())
        q = next(c for c in g.components(f_side - e_side) if touched <= c)
        r2 = g.neighborhood(q)
        g = g.remove(q).with_clique(r2)


def split_off(lg, core, roots):
    """Peripheries (C^i, N^i) of g - core and the torso on core - R as an LGraph."""
    rset = set(roots)
    pers = []
    torso = lg.induced(core - rset)
    for comp in lg.components(frozenset(lg.adj) - core):
        nb = lg.neighborhood(comp)
        pers.append((comp, nb))
        torso = torso.with_clique(nb - rset)
    return pers, torso


@dataclass(frozen=True)
class CutDecomposition:
    core: frozenset
    peripheries: tuple
    torso: Graph
    torso_labels: tuple
    certificates: tuple = ()

    def to_json(self):
        return {"core": sorted(self.core),
                "peripheries": [{"component": sorted(c), "interface": sorted(n)}
                                for c, n in self.peripheries],
                "torso": {"n": self.torso.n, "edges": [list(e) for e in self.torso.edges],
                          "labels": list(self.torso_labels)},
                "certificates": [c.to_json() if c is not None else None for c in self.certificates]}


def cut_decomposition(g, roots, a, h, d, budget=10 ** 7, certify=True):
    """Core C ⊇ R, peripheries with interfaces of size < k, and the completed torso."""
    roots = sorted(set(roots))
    k = len(roots)
    if a < k or h < 0 or d < 1:
        raise InputError("need a >= k, h >= 0, d >= 1")
    lg = LGraph.from_graph(g)
    core, _ = cut_core(lg, roots, a, h, d, budget)
    pers, torso = split_off(lg, core, roots)
    tg, labels = torso.dense()
    certs = []
    if certify:
        for comp, nb in pers:
            if len(nb) > k - 1:
                raise VerificationError("periphery interface too large")
            dn = Dense(lg.induced(comp | nb))
            am = find_attached_model(dn.g, complete_graph(len(nb)),
                                     [[dn.pos[v]] for v in sorted(nb)], budget=budget)
            if am is None:
                raise VerificationError("periphery lacks its attached clique")
            certs.append(AttachedModel(Model(tuple(dn.back(b) for b in am.model.branch_sets)),
                                       tuple(frozenset({v}) for v in sorted(nb)),
                                       am.attachment, am.a))
        if k > 0 and find_model(tg, join_pattern(a + k, h, d + 2 * k), budget=budget) is not None:
            raise VerificationError("torso still contains the excluded pattern")
    return CutDecomposition(frozenset(core), tuple((c, n) for c, n in pers), tg, tuple(labels),
                            tuple(certs))
