import json
import os
import subprocess
import sys

import pytest

from coxrand.cli import main
from coxrand.graph import LabelledGraph
from coxrand.properties import zk_graph


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def coxrand(*argv, env=None):
    """Run the installed entry point in a fresh interpreter."""
    full_env = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "coxrand.cli", *argv], capture_output=True,
                          text=True, env=full_env)


def test_sample_json_and_dot(capsys):
    code, out, _ = run_cli(capsys, "sample", "--n", "6", "--p", "2=1", "--seed", "3")
    assert code == 0
    g = LabelledGraph.from_json(out)
    assert g == LabelledGraph.complete(6, 2)
    code, out, _ = run_cli(capsys, "sample", "--n", "4", "--p", "3=1", "--format", "dot")
    assert code == 0 and out.startswith("graph G {") and "[label=3, style=solid]" in out


def test_sample_reads_config(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"schedule": {"entries": [{"label": 3, "c": 1.0}]}, "n": 5, "seed": 9}))
    code, out, _ = run_cli(capsys, "sample", "--config", str(cfg))
    assert code == 0 and LabelledGraph.from_json(out) == LabelledGraph.complete(5, 3)


def test_analyze_graph_file(tmp_path, capsys):
    path = tmp_path / "z1.json"
    path.write_text(json.dumps(zk_graph(1).to_json()))
    code, out, _ = run_cli(capsys, "analyze", "--graph", str(path), "--betti")
    assert code == 0
    report = json.loads(out)
    assert report["n"] == 4 and report["nerve_dim"] == 1 and report["betti"] == [1, 1]
    assert report["fc_type"] is True
    assert report["hyperbolic"] is True and report["witness"] is None
    assert report["zk"]["no_common_neighbor"]["plus_common_neighbor_free"] is True


def test_analyze_without_betti_omits_key(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--n", "10", "--p", "2=0.5", "--p", "3=0.2", "--zk", "0")
    report = json.loads(out)
    assert code == 0 and "betti" not in report and "zk" not in report


def test_expect_csv(capsys):
    code, out, _ = run_cli(capsys, "expect", "--pattern", "triangle(3,3,3)", "--p", "3=0.1",
                           "--n", "60", "--second-moment")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "n,b,exact,exact_decimal,leading,ratio"
    fields = row.split(",")
    assert fields[0] == "60" and fields[1] == "6" and fields[2] == "1711/50"
    code, out, _ = run_cli(capsys, "expect", "--pattern", "clique(3)", "--p", "2=1,-0.5",
                           "--n", "100,400", "--format", "json")
    rows = json.loads(out)["rows"]
    assert [r["n"] for r in rows] == [100, 400]


def test_sweep_formats(tmp_path, capsys):
    base = ["sweep", "--preset", "hyp-negative-square", "--trials", "4", "--n", "6,8"]
    code, out, _ = run_cli(capsys, *base)
    assert code == 0 and out.splitlines()[0] == "n,property,estimate,ci_lo,ci_hi,trials,excluded"
    assert len(out.splitlines()) == 3
    code, out, _ = run_cli(capsys, *base, "--format", "json")
    assert json.loads(out)["config"]["trials"] == 4
    svg = tmp_path / "s.svg"
    code, _, _ = run_cli(capsys, *base, "--format", "svg", "--out", str(svg))
    assert code == 0 and svg.read_text().startswith("<svg")


def test_sweep_config_file_and_overrides(tmp_path, capsys):
    cfg = tmp_path / "sweep.json"
    cfg.write_text(json.dumps({"schedule": {"entries": [{"label": 2, "c": 1.0}]},
                               "n_values": [5], "trials": 3, "properties": ["fc_type"]}))
    code, out, _ = run_cli(capsys, "sweep", "--config", str(cfg), "--trials", "7")
    z2 = 1.959963984540054 ** 2
    # all 7 successes: the Wilson lower bound reduces to n / (n + z^2)
    assert code == 0 and out.splitlines()[1] == f"5,fc_type,1,{7 / (7 + z2):.10g},1,7,0"


def test_catalog(capsys):
    code, out, _ = run_cli(capsys, "catalog")
    entries = json.loads(out)
    names = {e["type"] for e in entries}
    assert {"E8", "~E8", "H4", "I2(12)", "~A1", "~G2"} <= names
    e8 = next(e for e in entries if e["type"] == "E8")
    assert e8["vertices"] == 8 and len(e8["edges"]) == 7
    code, out, _ = run_cli(capsys, "catalog", "--format", "dot")
    assert code == 0 and 'graph "affine_E8"' in out


@pytest.mark.parametrize("argv, expected", [
    (["sample", "--n", "5", "--p", "2=0.8", "--p", "3=0.8"], 2),
    (["sample", "--n", "5"], 2),
    (["sample", "--n", "5", "--p", "2=0.5", "--format", "svg"], 2),
    (["sweep", "--preset", "nonexistent"], 2),
    (["expect", "--pattern", "hexagon", "--p", "3=0.1", "--n", "5"], 2),
    (["analyze", "--graph", "/nonexistent/graph.json"], 4),
    (["sample", "--n", "5", "--p", "2=0.5", "--out", "/nonexistent/dir/x.json"], 4),
    (["analyze", "--n", "14", "--p", "2=1", "--betti", "--budget-faces", "100"], 3),
    (["analyze", "--n", "12", "--p", "3=1", "--budget-search", "10"], 3),
])
def test_exit_codes(argv, expected, capsys):
    code, _, err = run_cli(capsys, *argv)
    assert code == expected and err.startswith("coxrand:")


def test_bad_config_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run_cli(capsys, "sweep", "--config", str(bad))
    assert code == 2


def test_argparse_errors_exit_two():
    proc = coxrand("sample", "--n", "abc")
    assert proc.returncode == 2


def test_threads_do_not_change_output_bytes():
    argv = ["sweep", "--preset", "hyp-negative-triangle", "--trials", "6", "--n", "20,30", "--seed", "17"]
    one = coxrand(*argv, "--threads", "1")
    many = coxrand(*argv, "--threads", "4")
    env = coxrand(*argv, env={"COXRAND_THREADS": "3"})
    assert one.returncode == many.returncode == env.returncode == 0
    assert one.stdout == many.stdout == env.stdout
