"""Corpus runner: one report row per (graph, check), in config order."""

import itertools
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .construct.certify import build
from .construct.chordal import chordal_partition
from .construct.params import chordal_wcol_bound
from .construct.wcolpart import wcol_order, wcol_partition
from .decomp import DEFAULT_EXACT_N, exact_treewidth
from .errors import BudgetExceeded, InputError, PreconditionError, VerificationError
from .generators import family, random_graph, random_tree, u_graph
from .graph import Graph, bfs_distances
from .io import graph_from_json, read_graph
from .minors import DEFAULT_NODE_BUDGET
from .partitions import HPartition, uhd_clique_witness
from .wcol import DEFAULT_WCOL_N, Ordering, verify_elimination_bound, wcol_exact, wcol_of_ordering

COLUMNS = ["index", "graph", "check", "pass", "measured", "bound", "error", "runtime_s"]


def make_graph(spec, seed=0):
    """Graph from a row spec: family/params, random, tree, u_graph, inline or file."""
    if "family" in spec:
        return family(spec["family"], *spec.get("params", []))
    if "random" in spec:
        r = spec["random"]
        return random_graph(r["n"], r["p"], r.get("seed", seed))
    if "tree" in spec:
        r = spec["tree"]
        return random_tree(r["n"], r.get("seed", seed))
    if "u_graph" in spec:
        return u_graph(*spec["u_graph"])
    if "graph" in spec:
        return graph_from_json(spec["graph"])
    if "file" in spec:
        return read_graph(spec["file"])
    raise InputError(f"cannot build a graph from {sorted(spec)}")


def graph_name(spec):
    for key in ("family", "random", "tree", "u_graph", "file"):
        if key in spec:
            val = spec.get("params", []) if key == "family" else spec[key]
            if key == "family":
                return f"{spec['family']}({','.join(map(str, val))})"
            if isinstance(val, dict):
                val = [f"{k}={v}" for k, v in sorted(val.items())]
            return f"{key}({','.join(map(str, val))})"
    return "inline"


def _set_partitions(items, cap):
    """All partitions of items into blocks of size at most cap."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for size in range(0, min(cap, len(items)) - 1 + 1):
        for mates in itertools.combinations(rest, size):
            left = [v for v in rest if v not in mates]
            for tail in _set_partitions(left, cap):
                yield [(first,) + mates] + tail


def _bfs_order(g):
    dist = bfs_distances(g, 0) if g.n else []
    return Ordering.from_order(sorted(range(g.n), key=lambda v: (dist[v], v)))


def run_check(g, check, opts):
    """(passed, measured, bound) for one named check."""
    rs = opts.get("r", [1, 2, 3, 4])
    if check == "wcol_bound":
        h, d, k = opts["h"], opts["d"], opts.get("k", 0)
        res = wcol_partition(g, h, d, k)
        rows = [wcol_order(g, res.hp, r, h, d, res.t, k)[1] for r in rs]
        return (all(x["ok"] for x in rows), [x["measured"] for x in rows],
                [x["bound"] for x in rows])
    if check in ("main", "wcol", "chordal"):
        cert = build(check, g, opts.get("h"), opts.get("d"), opts.get("k", 0), opts.get("t"),
                     [frozenset(r) if check == "main" else r for r in opts.get("roots", [])],
                     opts.get("strategy", "singleton"))
        bad = [c["name"] for c in cert["checks"] if not c["ok"]]
        return cert["ok"], {c["name"]: c.get("measured") for c in cert["checks"]}, bad or None
    if check == "chordal_wcol":
        t = opts["t"]
        hp = chordal_partition(g, t)
        sigma = Ordering.from_order([v for x in hp.order for v in sorted(hp.parts[x])])
        measured = [wcol_of_ordering(g, sigma, r) for r in rs]
        bound = [chordal_wcol_bound(t, r) for r in rs]
        return all(m <= b for m, b in zip(measured, bound)), measured, bound
    if check == "elimination":
        sigma = _bfs_order(g)
        t = opts.get("t", 1)
        reps = [verify_elimination_bound(g, sigma, t, r) for r in rs]
        ok = all(x["back_cliques_ok"] and x["measured"] <= x["bound"] for x in reps)
        return ok, [x["measured"] for x in reps], [x["bound"] for x in reps]
    if check == "wcol_exact":
        vals = [wcol_exact(g, r)[0] for r in rs]
        expect = opts.get("expect")
        return expect is None or vals == expect, vals, expect
    if check == "treewidth":
        w, _ = exact_treewidth(g)
        return opts.get("max") is None or w <= opts["max"], w, opts.get("max")
    if check == "uhd_witness":
        h, d = opts["h"], opts["d"]
        done = hits = 0
        for blocks in _set_partitions(list(range(g.n)), d):
            hp = HPartition(_quotient(g, blocks), tuple(frozenset(b) for b in blocks))
            done += 1
            try:
                xs = uhd_clique_witness(h, d, hp)
                w, _ = exact_treewidth(hp.h_graph)
                hits += len(xs) == h and w >= h - 1
            except (VerificationError, PreconditionError):
                pass
        return hits == done, hits, done
    raise InputError(f"unknown check {check!r}")


def _quotient(g, blocks):
    where = {v: i for i, b in enumerate(blocks) for v in b}
    return Graph(len(blocks), {(min(where[u], where[v]), max(where[u], where[v]))
                               for u, v in g.edges if where[u] != where[v]})


def _run_row(args):
    index, row, seed, timing = args
    spec = row.get("graph", row)
    name = row.get("name") or graph_name(spec)
    out = {"index": index, "graph": name, "check": row["check"]}
    start = time.perf_counter()
    try:
        g = make_graph(spec, seed)
        ok, measured, bound = run_check(g, row["check"], row.get("options", {}))
        out.update({"pass": bool(ok), "measured": measured, "bound": bound, "error": None})
    except (InputError, PreconditionError, VerificationError, BudgetExceeded) as exc:
        out.update({"pass": False, "measured": None, "bound": None,
                    "error": f"{type(exc).__name__}: {exc}"})
    if timing:
        out["runtime_s"] = round(time.perf_counter() - start, 4)
    return out


def expand(config):
    """Rows of the config, with 'repeat' seeds unrolled."""
    rows = []
    for row in config.get("rows", []):
        rep = row.get("repeat")
        if rep is None:
            rows.append(row)
            continue
        for i in range(rep):
            spec = {k: (dict(v, seed=v.get("seed", 0) + i) if k in ("random", "tree") else v)
                    for k, v in row["graph"].items()}
            rows.append(dict(row, graph=spec, repeat=None))
    return rows


def run_sweep(config, jobs=1, timing=True, seed=0):
    """Report with one row per (graph, check); row order follows the config."""
    if not isinstance(config, dict):
        raise InputError("sweep config must be a JSON object")
    seed = config.get("seed", seed)
    rows = expand(config)
    args = [(i, row, seed, timing) for i, row in enumerate(rows)]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_row, args))
    else:
        results = [_run_row(a) for a in args]
    budgets = {"nodes": DEFAULT_NODE_BUDGET, "exact_n": DEFAULT_EXACT_N, "wcol_n": DEFAULT_WCOL_N}
    return {"version": __version__, "seed": seed, "budgets": budgets, "rows": results,
            "passed": sum(r["pass"] for r in results), "total": len(results)}
