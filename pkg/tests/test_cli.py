from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from qharness.cli import run_cli

IDS = "gen-h,pfaff-saalschutz,rogers-selberg-2,control-gen-h-scaled"


def run(capsys, *argv):
    code = run_cli(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_timing(report):
    for r in report["results"]:
        r.pop("elapsed_ms")
    return report


# -- list -------------------------------------------------------------------------------

def test_list_text(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) >= 50
    assert any(line.startswith("rogers-selberg-1 ") for line in lines)


def test_list_json_and_csv(capsys):
    code, out, _ = run(capsys, "list", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and {"id", "paper_ref", "mode", "group", "expect_fail"} <= set(rows[0])
    code, out, _ = run(capsys, "list", "--format", "csv")
    assert code == 0 and len(list(csv.DictReader(io.StringIO(out)))) == len(rows)


# -- usage errors --------------------------------------------------------------------

@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--ids", "no-such-id"],
        ["run"],
        ["run", "--all", "--ids", "gen-h"],
        ["run", "--ids", "gen-h", "--samples", "0"],
        ["run", "--ids", "gen-h", "--tol", "-1"],
        ["run", "--ids", "gen-h", "--seed", "-3"],
        ["frobnicate"],
        ["eval", "poch", "--q", "0.5"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("qharness:")


# -- run ------------------------------------------------------------------------------

def test_run_json_report(capsys):
    code, out, _ = run(capsys, "run", "--ids", IDS, "--samples", "4", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert set(rep) == {"suite_seed", "config", "results", "aggregate"}
    assert rep["suite_seed"] == 42
    assert rep["config"] == {"ids": ["gen-h", "pfaff-saalschutz", "rogers-selberg-2", "control-gen-h-scaled"],
                             "seed": 42, "samples": 4, "order": 100, "tol": 1e-8}
    keys = {"id", "paper_ref", "mode", "verdict", "max_residual", "nsamples", "worst_sample", "elapsed_ms"}
    for r in rep["results"]:
        assert keys <= set(r)
        assert {"params", "lhs", "rhs"} <= set(r["worst_sample"])
    agg = rep["aggregate"]
    assert agg["total"] == 4 and agg["verdict"] == "pass" and agg["expected_failures"] == 1
    bad = next(r for r in rep["results"] if r["id"] == "control-gen-h-scaled")
    assert bad["verdict"] == "fail" and bad["ok"]


def test_run_failure_exit_1(capsys):
    code, out, _ = run(capsys, "run", "--ids", "gen-h", "--samples", "3", "--tol", "1e-30")
    assert code == 1
    assert "suite fail" in out


def test_run_csv(capsys):
    code, out, _ = run(capsys, "run", "--ids", IDS, "--samples", "2", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["id"] for r in rows] == IDS.split(",")
    assert json.loads(rows[0]["worst_sample"])["params"]


def test_run_out_path(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "run", "--ids", "gen-h", "--samples", "2", "--format", "json", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["results"][0]["id"] == "gen-h"


def test_json_is_deterministic(capsys):
    argv = ["run", "--ids", IDS, "--samples", "5", "--seed", "123", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert strip_timing(json.loads(a)) == strip_timing(json.loads(b))


def test_jobs_do_not_change_report(capsys):
    base = ["run", "--ids", IDS, "--samples", "5", "--format", "json"]
    _, a, _ = run(capsys, *base, "--jobs", "1")
    _, b, _ = run(capsys, *base, "--jobs", "3")
    assert strip_timing(json.loads(a)) == strip_timing(json.loads(b))


# -- eval -----------------------------------------------------------------------------

def eval_value(capsys, *argv):
    code, out, _ = run(capsys, "eval", *argv, "--format", "json")
    assert code == 0
    re, im = json.loads(out)["value"]
    return complex(re, im)


def test_eval_primitives(capsys):
    assert eval_value(capsys, "poch", "--q", "0.5", "--a", "0.5", "--n", "1") == pytest.approx(0.5)
    assert eval_value(capsys, "poch", "--q", "0.5", "--a", "0.5") == pytest.approx(0.2887880950866024)
    z = eval_value(capsys, "phi", "--q", "0.5", "--upper", "0", "--z", "0.3")
    assert z == pytest.approx(1 / eval_value(capsys, "poch", "--q", "0.5", "--a", "0.3"))
    assert eval_value(capsys, "h", "--q", "0.5", "--n", "2", "--x", "1", "--y", "2") == pytest.approx(8)
    assert eval_value(capsys, "g", "--q", "0.5", "--n", "1", "--x", "1", "--y", "2") == pytest.approx(3)
    assert eval_value(capsys, "jackson", "--q", "0.5", "--lo", "0", "--hi", "1") == pytest.approx(1)


def test_eval_mp_precision(capsys):
    v = eval_value(capsys, "poch", "--q", "0.5", "--a", "0.5", "--dps", "30")
    assert v == pytest.approx(0.2887880950866024, abs=1e-15)


def test_eval_text(capsys):
    code, out, _ = run(capsys, "eval", "h", "--q", "0.5", "--n", "2", "--x", "1", "--y", "2")
    assert code == 0 and out.startswith("8.0")


def test_eval_divergent_exit_3(capsys):
    code, _, err = run(capsys, "eval", "phi", "--q", "0.5", "--upper", "0.3,0.4", "--lower", "0.2", "--z", "2")
    assert code == 3 and "Divergent" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qharness", "run", "--ids", "no-such-id"], capture_output=True, text=True)
    assert res.returncode == 2
