"""Command-line entry point.

Exit status: 0 success, 1 usage or input error, 2 verification failure,
3 budget exceeded.
"""

import argparse
import json
import os
import sys

from . import __version__
from .construct.certify import build, verify
from .construct.dichotomy import join_pattern
from .construct.params import bounds_row
from .decomp import (DEFAULT_EXACT_N, TreeDecomposition, capture_interfaces, check_capture,
                     exact_treedepth, exact_treewidth, helly_hit, interface_report, is_natural,
                     make_natural)
from .errors import BudgetExceeded, InputError, PreconditionError, VerificationError
from .generators import FAMILIES, family, random_graph, random_tree, u_graph
from .io import dumps, graph_to_dot, graph_to_json, read_graph, read_json, rows_to_csv
from .minors import DEFAULT_NODE_BUDGET, Linkage, find_attached_model, find_model, menger
from .partitions import (HPartition, Layering, layered_lower_bound_check, uhd_clique_witness,
                         verify_hpartition)
from .sweep import COLUMNS, run_sweep
from .wcol import DEFAULT_WCOL_N, Ordering, per_vertex, wcol_exact, wcol_of_ordering


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text):
    try:
        return [int(x) for x in text.replace(",", " ").split()] if text else []
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _root_sets(text):
    """'0;1,2' -> [{0}, {1, 2}]."""
    if not text:
        return []
    return [frozenset(_ints(chunk)) for chunk in text.split(";") if chunk.strip()]


def _td(args, g):
    if getattr(args, "td", None):
        return TreeDecomposition.from_json(read_json(args.td))
    return exact_treewidth(g, args.budget_n)[1]


def cmd_gen(args):
    if args.family == "random":
        if args.n is None or args.p is None:
            raise UsageError("gen random needs --n and --p")
        g = random_graph(args.n, args.p, args.seed)
    elif args.family == "tree":
        if args.n is None:
            raise UsageError("gen tree needs --n")
        g = random_tree(args.n, args.seed)
    elif args.family == "u_graph":
        if len(args.params) != 2:
            raise UsageError("gen u_graph needs h and d")
        g = u_graph(*args.params)
    else:
        g = family(args.family, *args.params)
    if args.format == "dot":
        return graph_to_dot(g)
    if args.format == "csv":
        return rows_to_csv([{"u": u, "v": v} for u, v in g.edges], ["u", "v"])
    return graph_to_json(g)


def cmd_wcol(args):
    g = read_graph(args.graph)
    if args.exact:
        value, sigma = wcol_exact(g, args.r, args.budget_n)
        return {"r": args.r, "value": value, "order": list(sigma.order),
                "per_vertex": per_vertex(g, sigma, args.r), "exact": True}
    order = _order(args.order) if args.order else list(range(g.n))
    if sorted(order) != list(range(g.n)):
        raise UsageError("--order must list every vertex exactly once")
    sigma = Ordering.from_order(order)
    return {"r": args.r, "value": wcol_of_ordering(g, sigma, args.r), "order": order,
            "per_vertex": per_vertex(g, sigma, args.r), "exact": False}


def _order(text):
    """An inline list '3,1,0,2' or a JSON file holding a list (or an object with 'order')."""
    if os.path.exists(text):
        obj = read_json(text)
        obj = obj.get("order") if isinstance(obj, dict) else obj
        if not isinstance(obj, list) or not all(isinstance(v, int) for v in obj):
            raise UsageError(f"{text}: expected a list of vertex ids")
        return obj
    return _ints(text)


def cmd_tw(args):
    g = read_graph(args.graph)
    w, td = exact_treewidth(g, args.budget_n)
    return {"treewidth": w, "decomposition": td.to_json()}


def cmd_td(args):
    g = read_graph(args.graph)
    depth, forest = exact_treedepth(g, args.budget_n)
    return {"treedepth": depth, "parent": list(forest.parent)}


def cmd_minor(args):
    g = read_graph(args.graph)
    if args.pattern:
        pattern = read_graph(args.pattern)
    elif args.join:
        k, h, d = args.join
        pattern = join_pattern(k, h, d)
    else:
        raise UsageError("minor needs --pattern or --join k h d")
    roots = _root_sets(args.roots)
    if roots:
        am = find_attached_model(g, pattern, roots, budget=args.budget_nodes)
        return {"found": am is not None, "attached": None if am is None else am.to_json()}
    model = find_model(g, pattern, budget=args.budget_nodes)
    return {"found": model is not None, "model": None if model is None else model.to_json()}


def cmd_menger(args):
    g = read_graph(args.graph)
    out = menger(g, _ints(args.s), _ints(args.t), args.k)
    if isinstance(out, Linkage):
        return {"outcome": "linkage", **out.to_json()}
    return {"outcome": "separation", **out.to_json()}


def cmd_natural(args):
    g = read_graph(args.graph)
    td = make_natural(g, _td(args, g))
    return {"natural": is_natural(g, td), "decomposition": td.to_json()}


def cmd_helly(args):
    g = read_graph(args.graph)
    fam = [frozenset(m) for m in read_json(args.family)]
    out = helly_hit(g, _td(args, g), fam, args.d)
    if hasattr(out, "members"):
        return {"outcome": "disjoint", "members": [sorted(m) for m in out.members]}
    return {"outcome": "hitting", "nodes": list(out.nodes)}


def cmd_capture(args):
    g = read_graph(args.graph)
    td = _td(args, g)
    nodes = _ints(args.nodes)
    x, marked = capture_interfaces(g, td, nodes)
    check_capture(g, td, nodes, x, marked)
    rows = [{"component": sorted(_bits(c)), "interface": sorted(_bits(nb)), "bags": cover}
            for c, nb, cover in interface_report(g, td, x, marked)]
    return {"x": sorted(x), "marked": list(marked), "components": rows}


def _bits(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def cmd_partition(args):
    g = read_graph(args.graph)
    roots = _root_sets(args.roots)
    if args.algo == "wcol":
        if any(len(r) != 1 for r in roots):
            raise UsageError("wcol roots are single vertices")
        roots = [min(r) for r in roots]
    cert = build(args.algo, g, args.h, args.d, args.k, args.t, roots, args.strategy,
                 args.budget_nodes)
    if args.format == "dot":
        return graph_to_dot(g, cert["partition"]["parts"])
    return cert


def _partition(path):
    obj = read_json(path)
    try:
        return HPartition.from_json(obj.get("partition", obj))
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"{path}: malformed partition ({exc})") from None


def cmd_verify(args):
    if args.what == "partition":
        if not args.graph:
            raise UsageError("verify partition needs --graph")
        report = verify_hpartition(read_graph(args.graph), _partition(args.file))
        return {"ok": report["valid"], **report}
    cert = read_json(args.file)
    report = verify(cert, precondition=args.precondition, budget=args.budget_nodes)
    return report


def cmd_witness(args):
    hp = _partition(args.partition)
    if args.mode == "layered":
        if args.c is None or not args.layering:
            raise UsageError("witness layered needs --c and --layering")
        layers = read_json(args.layering)
        lay = Layering(tuple(frozenset(layer) for layer in layers))
        out = layered_lower_bound_check(args.h, args.c, hp, lay)
        return {"ok": out["valid"], **out}
    if args.d is None:
        raise UsageError("witness uhd needs --d")
    xs = uhd_clique_witness(args.h, args.d, hp, per_tree=args.per_tree)
    w, _ = exact_treewidth(hp.h_graph, args.budget_n)
    return {"clique": xs, "h_treewidth": w}


def cmd_bounds(args):
    return bounds_row(args.h, args.d, args.k, args.t, args.r)


def cmd_sweep(args):
    config = read_json(args.config)
    report = run_sweep(config, jobs=args.jobs, timing=not args.no_timing, seed=args.seed)
    if args.format == "csv":
        return rows_to_csv(report["rows"], COLUMNS)
    return report


def build_parser():
    common = Parser(add_help=False)
    common.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET,
                        help="search-node budget for minor searches")
    common.add_argument("--budget-n", type=int, default=None,
                        help=f"largest n for exact treewidth and treedepth (default {DEFAULT_EXACT_N}) "
                             f"and exact wcol (default {DEFAULT_WCOL_N})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "dot"), default="json")

    p = Parser(prog="minorpart", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)

    s = sub.add_parser("gen", parents=[common], help="generate a graph")
    s.add_argument("family", choices=sorted(FAMILIES) + ["random", "tree", "u_graph"])
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--p", type=float)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("wcol", parents=[common], help="weak coloring number")
    s.add_argument("--graph", required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--exact", action="store_true")
    s.add_argument("--order", help="vertex order, comma separated")
    s.set_defaults(func=cmd_wcol)

    for name, func, text in (("tw", cmd_tw, "exact treewidth"), ("td", cmd_td, "exact treedepth")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("--graph", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("minor", parents=[common], help="search for a minor model")
    s.add_argument("--graph", required=True)
    s.add_argument("--pattern")
    s.add_argument("--join", nargs=3, type=int, metavar=("K", "H", "D"),
                   help="pattern K_k ⊕ U_{h,d}")
    s.add_argument("--roots", help="root sets for an attached model, e.g. '0;5'")
    s.set_defaults(func=cmd_minor)

    s = sub.add_parser("menger", parents=[common], help="linkage or small separation")
    s.add_argument("--graph", required=True)
    s.add_argument("--s", required=True)
    s.add_argument("--t", required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_menger)

    s = sub.add_parser("natural", parents=[common], help="natural tree-decomposition")
    s.add_argument("--graph", required=True)
    s.add_argument("--td")
    s.set_defaults(func=cmd_natural)

    s = sub.add_parser("helly", parents=[common], help="disjoint members or hitting bags")
    s.add_argument("--graph", required=True)
    s.add_argument("--family", required=True, help="JSON list of vertex lists")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--td")
    s.set_defaults(func=cmd_helly)

    s = sub.add_parser("capture", parents=[common], help="grow bags to capture interfaces")
    s.add_argument("--graph", required=True)
    s.add_argument("--nodes", required=True)
    s.add_argument("--td")
    s.set_defaults(func=cmd_capture)

    s = sub.add_parser("partition", parents=[common], help="build a certified partition")
    s.add_argument("--algo", choices=("chordal", "main", "wcol"), required=True)
    s.add_argument("--graph", required=True)
    s.add_argument("--h", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--k", type=int, default=0)
    s.add_argument("--t", type=int)
    s.add_argument("--roots", help="root sets, e.g. '0;1,2'")
    s.add_argument("--strategy", choices=("singleton", "chordal"), default="singleton")
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("verify", parents=[common], help="re-check a certificate")
    s.add_argument("what", choices=("certificate", "partition"))
    s.add_argument("file")
    s.add_argument("--graph", help="the partitioned graph (verify partition)")
    s.add_argument("--precondition", action="store_true",
                   help="also re-verify the excluded minor and treewidth")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("witness", parents=[common], help="clique witness in a partition of U_{h,d}")
    s.add_argument("mode", nargs="?", choices=("uhd", "layered"), default="uhd")
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--d", type=int)
    s.add_argument("--c", type=int, help="per-layer width (layered mode, on U_{h,3c})")
    s.add_argument("--layering", help="JSON list of layers (layered mode)")
    s.add_argument("--partition", required=True)
    s.add_argument("--per-tree", action="store_true")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("bounds", parents=[common], help="parameter recursions and bounds")
    for name in ("h", "d", "k", "t", "r"):
        s.add_argument(f"--{name}", type=int, required=name != "k", default=0 if name == "k" else None)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("sweep", parents=[common], help="run a corpus of checks")
    s.add_argument("--config", required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--no-timing", action="store_true", help="omit runtimes for byte-stable reports")
    s.set_defaults(func=cmd_sweep)
    return p


def _emit(result, args):
    text = result if isinstance(result, str) else dumps(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _failed(result):
    return isinstance(result, dict) and result.get("ok") is False


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.budget_n is None:
            args.budget_n = DEFAULT_WCOL_N if args.command == "wcol" else DEFAULT_EXACT_N
        result = args.func(args)
        _emit(result, args)
        return 2 if _failed(result) else 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        if exc.evidence is not None:
            print(json.dumps(exc.evidence, sort_keys=True, default=_json_default), file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3


def _json_default(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return str(obj)


if __name__ == "__main__":
    sys.exit(main())
