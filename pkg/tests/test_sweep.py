from minorpart.io import dumps
from minorpart.sweep import expand, make_graph, run_sweep
from minorpart.generators import random_tree


def wcol_sweep():
    rows = [{"graph": {"family": "star", "params": [n]}, "check": "wcol_bound",
             "options": {"h": 2, "d": n, "r": [1, 2, 3, 4]}} for n in (2, 3, 4)]
    rows.append({"graph": {"tree": {"n": 7, "seed": 0}}, "check": "elimination", "repeat": 5,
                 "options": {"t": 1, "r": [1, 2, 3, 4]}})
    return {"seed": 11, "rows": rows}


def test_wcol_bound_sweep_passes():
    report = run_sweep(wcol_sweep(), timing=False)
    assert report["total"] == 8 and report["passed"] == 8
    assert report["seed"] == 11 and "nodes" in report["budgets"]


def test_uhd_witness_sweep():
    cfg = {"rows": [{"graph": {"u_graph": [2, 2]}, "check": "uhd_witness", "options": {"h": 2, "d": 2}}]}
    row = run_sweep(cfg, timing=False)["rows"][0]
    assert row["pass"] and row["measured"] == row["bound"] == 76


def test_empty_corpus():
    report = run_sweep({"rows": []})
    assert report["rows"] == [] and report["total"] == 0


def test_repeat_unrolls_seeds():
    rows = expand({"rows": [{"graph": {"tree": {"n": 5, "seed": 3}}, "check": "elimination", "repeat": 3}]})
    assert [r["graph"]["tree"]["seed"] for r in rows] == [3, 4, 5]
    assert make_graph(rows[1]["graph"]) == random_tree(5, 4)


def test_errors_become_rows():
    cfg = {"rows": [{"graph": {"family": "path", "params": [9]}, "check": "wcol_bound",
                     "options": {"h": 2, "d": 2}},
                    {"graph": {"family": "path", "params": [3]}, "check": "nonsense"}]}
    rows = run_sweep(cfg, timing=False)["rows"]
    assert rows[0]["error"].startswith("PreconditionError")
    assert rows[1]["error"].startswith("InputError") and not rows[1]["pass"]


def test_parallel_matches_serial():
    cfg = wcol_sweep()
    assert dumps(run_sweep(cfg, jobs=2, timing=False)) == dumps(run_sweep(cfg, jobs=1, timing=False))
