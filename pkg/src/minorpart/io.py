"""Reading and writing graphs and reports: JSON, plain edge lists, CSV and DOT."""

import csv
import io
import json

from .errors import InputError
from .graph import Graph


def graph_to_json(g):
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_json(obj, where="graph"):
    if not isinstance(obj, dict) or "n" not in obj:
        raise InputError(f"{where}: expected an object with 'n' and 'edges'")
    n = obj["n"]
    edges = obj.get("edges", [])
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InputError(f"{where}: 'n' must be a non-negative integer")
    if not isinstance(edges, list):
        raise InputError(f"{where}: 'edges' must be a list")
    for i, e in enumerate(edges):
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in e)):
            raise InputError(f"{where}: edge #{i} must be a pair of integers")
    try:
        return Graph(n, edges)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def parse_json(text, where="input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_edge_list(text, where="input"):
    """First data line is n; every further line is 'u v'. '#' starts a comment."""
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.replace(",", " ").split()
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise InputError(f"{where}: line {lineno}: expected integers, got {line!r}") from None
        if n is None:
            if len(nums) not in (1, 2):
                raise InputError(f"{where}: line {lineno}: header must be 'n' or 'n m'")
            n = nums[0]
            m = nums[1] if len(nums) == 2 else None
            continue
        if len(nums) != 2:
            raise InputError(f"{where}: line {lineno}: an edge needs two endpoints")
        edges.append(nums)
    if n is None:
        raise InputError(f"{where}: empty edge list")
    if m is not None and m != len(edges):
        raise InputError(f"{where}: header announces {m} edges, found {len(edges)}")
    try:
        return Graph(n, edges)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def graph_to_edge_list(g):
    return "".join([f"{g.n} {g.m}\n"] + [f"{u} {v}\n" for u, v in g.edges])


def read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def read_json(path):
    return parse_json(read_text(path), path)


def read_graph(path):
    """Graph from a JSON object file, or a plain edge list for any other content."""
    text = read_text(path)
    if text.lstrip().startswith("{"):
        return graph_from_json(parse_json(text, path), path)
    return parse_edge_list(text, path)


def graph_to_dot(g, parts=None):
    lines = ["graph G {"]
    if parts is not None:
        for i, p in enumerate(parts):
            lines.append(f"  subgraph cluster_{i} {{ label=\"{i}\"; " +
                         " ".join(f"{v};" for v in sorted(p)) + " }")
    else:
        lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} -- {v};" for u, v in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(obj):
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def rows_to_csv(rows, columns):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: _cell(row.get(c)) for c in columns})
    return buf.getvalue()


def _cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if v is None:
        return ""
    return v
