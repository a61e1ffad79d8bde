"""Shared checks for ordered partitions with geodesic certificates."""

from ..decomp import exact_treewidth
from ..errors import InputError, VerificationError
from ..graph import Graph, is_connected_mask
from ..bits import to_mask
from ..partitions import hpartition_problems
from ..wcol import SubgeodesicCertificate, check_subgeodesic


def suffix_certificates(g, hp, i):
    """(suffix graph, SubgeodesicCertificate per geodesic) for part at position i of the order."""
    order = hp.order
    s = hp.ab[order[i]]
    later = set(s.b)
    for y in order[i + 1:]:
        later |= hp.parts[y]
    suffix = Graph(g.n, [(u, v) for u, v in g.edges if u in later and v in later])
    certs = []
    for p, extra in zip(s.geodesics, s.extra_edges):
        keep = later | set(p)
        edges = [(u, v) for u, v in g.edges if u in keep and v in keep]
        edges += [e for e in extra if e[0] in keep and e[1] in keep]
        certs.append(SubgeodesicCertificate(Graph(g.n, edges), tuple(p), frozenset(s.b & set(p))))
    return suffix, certs


def elimination_problems(h_graph, order):
    rank = {x: i for i, x in enumerate(order)}
    bad = []
    for x in order:
        back = [y for y in h_graph.neighbors(x) if rank[y] < rank[x]]
        if any(not h_graph.has_edge(a, b) for i, a in enumerate(back) for b in back[i + 1:]):
            bad.append(x)
    return bad


def check_chordal(g, hp, t):
    """The four properties of a chordal partition, each as a named check."""
    problems = hpartition_problems(g, hp)
    checks = [{"name": "h_partition", "ok": not problems and hp.order is not None and hp.ab is not None,
               "problems": problems}]
    if not checks[0]["ok"]:
        return {"ok": False, "checks": checks}
    connected = all(is_connected_mask(g, to_mask(p)) for p in hp.parts)
    checks.append({"name": "connected_parts", "ok": connected})
    bad = elimination_problems(hp.h_graph, hp.order)
    checks.append({"name": "elimination_order", "ok": not bad, "bad": bad})
    tw_h, _ = exact_treewidth(hp.h_graph)
    checks.append({"name": "treewidth", "ok": tw_h <= t - 2, "measured": tw_h, "bound": t - 2})
    limit = max(t - 3, 1)
    why, worst = [], 0
    for i, x in enumerate(hp.order):
        s = hp.ab[x]
        worst = max(worst, len(s.geodesics))
        covered = set()
        for p in s.geodesics:
            covered |= set(p)
        if s.a or s.b != hp.parts[x] or not s.b <= covered:
            why.append(f"part {x}: not covered by its geodesics")
            continue
        suffix, certs = suffix_certificates(g, hp, i)
        for c in certs:
            try:
                check_subgeodesic(suffix, c)
            except (VerificationError, InputError) as exc:
                why.append(f"part {x}: {exc}")
    checks.append({"name": "geodesics", "ok": not why and worst <= limit,
                   "max_geodesics": worst, "bound": limit, "problems": why})
    return {"ok": all(c["ok"] for c in checks), "checks": checks}
