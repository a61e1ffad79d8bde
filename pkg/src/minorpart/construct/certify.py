"""Certificate records for the partition constructions and their independent re-check."""

from .. import __version__
from ..decomp import exact_treewidth
from ..errors import InputError
from ..graph import Graph
from ..minors import DEFAULT_NODE_BUDGET, find_model
from ..partitions import HPartition
from .checks import check_chordal
from .chordal import chordal_partition
from .dichotomy import join_pattern
from .main import STRATEGIES, MainResult, check_main, main_partition
from .params import eps_impl, tau
from .wcolpart import WcolResult, check_wcol, wcol_partition

KINDS = ("chordal", "main", "wcol")


def graph_json(g):
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def _roots_json(roots):
    return [sorted(r) if isinstance(r, (set, frozenset)) else r for r in roots]


def build(kind, g, h=None, d=None, k=0, t=None, roots=(), strategy="singleton",
          budget=DEFAULT_NODE_BUDGET):
    """Run one construction and return its certificate as a JSON-ready dict."""
    if kind == "chordal":
        if t is None:
            raise InputError("chordal partitions need t")
        hp = chordal_partition(g, t)
        report = check_chordal(g, hp, t)
        params = {"t": t}
        extra = {}
    elif kind == "main":
        if None in (h, d, t):
            raise InputError("main partitions need h, d and t")
        res = main_partition(g, h, d, k, t, roots, strategy, budget, verify=False)
        hp = res.hp
        report = check_main(g, res, h, d, k, t)
        params = {"h": h, "d": d, "k": k, "t": t}
        extra = {"strategy": strategy, "distinguished": list(res.distinguished),
                 "roots": _roots_json(res.roots)}
    elif kind == "wcol":
        if None in (h, d):
            raise InputError("wcol partitions need h and d")
        res = wcol_partition(g, h, d, k, roots, budget, verify=False)
        hp = res.hp
        report = check_wcol(g, res, h, d, k)
        params = {"h": h, "d": d, "k": k, "t": res.t}
        extra = {"distinguished": list(hp.order[:len(res.roots)]), "roots": list(res.roots),
                 "bound_used": {"eps_impl": eps_impl(h, d, k, res.t), "tau": tau(h, k)}}
    else:
        raise InputError(f"unknown certificate kind {kind!r}")
    cert = {"kind": kind, "version": __version__, "graph": graph_json(g), "params": params,
            "partition": hp.to_json(), "checks": report["checks"], "ok": report["ok"]}
    cert.update(extra)
    return cert


def verify(cert, precondition=False, budget=DEFAULT_NODE_BUDGET):
    """Re-run every checker on the recorded data; nothing is taken from the construction."""
    try:
        kind = cert["kind"]
        g = Graph(cert["graph"]["n"], cert["graph"]["edges"])
        hp = HPartition.from_json(cert["partition"])
        p = cert["params"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed certificate: missing {exc}") from None
    if kind == "chordal":
        report = check_chordal(g, hp, p["t"])
    elif kind == "main":
        strategy = cert.get("strategy", "singleton")
        if strategy not in STRATEGIES:
            raise InputError(f"unknown strategy {strategy!r}")
        roots = tuple(frozenset(r) for r in cert.get("roots", []))
        res = MainResult(hp, tuple(cert.get("distinguished", [])), roots, strategy)
        report = check_main(g, res, p["h"], p["d"], p["k"], p["t"])
    elif kind == "wcol":
        width, _ = exact_treewidth(g)
        res = WcolResult(hp, tuple(cert.get("roots", [])), width + 1)
        report = check_wcol(g, res, p["h"], p["d"], p["k"])
        report["checks"].append({"name": "recorded_t", "ok": p["t"] == width + 1,
                                 "measured": width + 1, "recorded": p["t"]})
        report["ok"] = report["ok"] and p["t"] == width + 1
    else:
        raise InputError(f"unknown certificate kind {kind!r}")
    if precondition and kind in ("main", "wcol"):
        pre = precondition_report(g, p["h"], p["d"], p["k"], p.get("t"), budget)
        report["checks"].append(pre)
        report["ok"] = report["ok"] and pre["ok"]
    return report


def precondition_report(g, h, d, k, t=None, budget=DEFAULT_NODE_BUDGET):
    """Whether g excludes K_k ⊕ U_{h,d} (and has treewidth below t when t is given)."""
    model = find_model(g, join_pattern(k, h, d), budget=budget)
    width, _ = exact_treewidth(g)
    ok = model is None and (t is None or width < t)
    return {"name": "precondition", "ok": ok, "pattern_excluded": model is None,
            "treewidth": width, "model": None if model is None else model.to_json()}
