"""Acceptance criteria, one PASS/FAIL line each.

The full catalog runs once at seed 42 with 50 samples.  Two catalog entries
encode displayed identities that are false as printed (see the decision
notes); they fail honestly, their criteria print FAIL, and the tests are
marked xfail after asserting that nothing else went wrong.
"""
from __future__ import annotations

import json
import os
import re
import sys

import pytest

from qharness import NotQPDESolution, QContext
from qharness.cli import run_cli
from qharness.qcalculus import BivariateOracle, expand_in_h
from qharness.registry import builtin_catalog, run_check

SEED, SAMPLES = 42, 50

# displays that do not hold as printed; each fails on every seed
KNOWN_FALSE = {"op-3phi2-inv", "ext-sears-4phi3"}

FORMAL = ["rogers-selberg-1", "rogers-selberg-2", "rogers-selberg-3", "rs1-theta", "rogers-mod14-1", "rogers-mod14-2"]
TERMINATING = [
    "liu-lemma", "terminating-transform", "transform-5phi4", "ext-watson", "watson-whipple", "pfaff-saalschutz",
    "chu-vandermonde", "quad-a", "quad-b", "quad-c", "verma-jain-1", "verma-jain-2", "verma-jain-3",
]
NONTERMINATING = [
    "gen-h", "gen-g", "mehler-h", "mehler-g", "carlitz-shift-gf", "carlitz-mehler", "rogers-6phi5", "rogers-ext",
    "irs-3phi2", "ramanujan-reciprocity", "liu-reciprocity", "kang-reciprocity", "chu-zhang-reciprocity",
    "poch-flip", "quad-a-limit", "quad-b-limit", "quad-c-limit", "nonterminating-transform", "multilinear-gf-k1",
    "multilinear-gf-k2", "andrews-lauricella-k1", "andrews-lauricella-k2", "ext-q-gauss", "ext-q-euler",
    "ext-sears-4phi3", "sears-3phi2",
]
INTEGRAL = ["andrews-askey", "aa-ext", "sears-av-integral", "operator-integral", "integral-3phi2"]
OPERATOR = ["op-hn-rep", "op-gn-rep", "op-cliupp-i", "op-cliupp-ii", "op-3phi2", "op-3phi2-inv"]
DERIVATIVE = ["higher-qderiv-1", "higher-qderiv-2", "h-recurrence", "g-recurrence"]
CONTROLS = ["control-gen-h-scaled", "control-pfaff-exponent", "control-rs-mismatch"]

_TIMING = re.compile(r'^\s*"elapsed_ms": .*\n', re.M)


def _cli_report(path, jobs):
    argv = ["run", "--all", "--seed", str(SEED), "--samples", str(SAMPLES), "--format", "json",
            "--jobs", str(jobs), "--out", str(path)]
    code = run_cli(argv)
    return code, path.read_text()


@pytest.fixture(scope="module")
def suite(tmp_path_factory):
    d = tmp_path_factory.mktemp("acceptance")
    code, text = _cli_report(d / "serial.json", 1)
    rep = json.loads(text)
    return {"code": code, "text": text, "report": rep, "by_id": {r["id"]: r for r in rep["results"]}, "dir": d}


def _log(log, n, ok, text):
    line = f"{'PASS' if ok else 'FAIL'} {n} {text}"
    log.append(line)
    print(line)


def _seconds(by_id, ids):
    return sum(by_id[i]["elapsed_ms"] for i in ids) / 1e3


def _bad(by_id, ids, limit):
    return sorted(i for i in ids if by_id[i]["verdict"] != "pass" or not by_id[i]["max_residual"] <= limit)


def _finish(bad, allowed):
    """Assert that the only misses are the documented false displays, then xfail on those."""
    assert set(bad) <= KNOWN_FALSE & set(allowed), f"unexpected failures: {sorted(set(bad) - KNOWN_FALSE)}"
    if bad:
        pytest.xfail(f"displayed identity false as printed: {', '.join(bad)}")


def test_1_formal_exactness(suite, acceptance_log):
    by_id = suite["by_id"]
    bad = [i for i in FORMAL if by_id[i]["verdict"] != "pass" or by_id[i]["max_residual"] != 0]
    secs = _seconds(by_id, FORMAL)
    ok = not bad and secs < 10 and suite["report"]["config"]["order"] == 100
    _log(acceptance_log, 1, ok, f"formal identities coefficient-exact to q^100 ({secs:.2f} s < 10 s)")
    assert ok, bad


def test_2_terminating_exactness(suite, acceptance_log):
    by_id = suite["by_id"]
    bad = _bad(by_id, TERMINATING, 1e-10)
    secs = _seconds(by_id, TERMINATING)
    worst = max(by_id[i]["max_residual"] for i in TERMINATING)
    ok = not bad and secs < 30 and all(by_id[i]["nsamples"] == SAMPLES for i in TERMINATING)
    _log(acceptance_log, 2, ok, f"terminating sums, worst residual {worst:.1e} <= 1e-10 ({secs:.2f} s < 30 s)")
    assert ok, bad


def test_3_nonterminating(suite, acceptance_log):
    by_id = suite["by_id"]
    bad = _bad(by_id, NONTERMINATING, 1e-8)
    secs = _seconds(by_id, NONTERMINATING)
    ok = not bad and secs < 180
    extra = f"; failing: {', '.join(bad)}" if bad else ""
    _log(acceptance_log, 3, ok, f"nonterminating identities at 1e-8 ({secs:.2f} s < 180 s){extra}")
    assert secs < 180
    assert all(by_id[i]["nsamples"] == SAMPLES for i in NONTERMINATING)
    _finish(bad, NONTERMINATING)


def test_4_integrals(suite, acceptance_log):
    by_id = suite["by_id"]
    bad = _bad(by_id, INTEGRAL, 1e-8)
    entries = {c.id: c for c in builtin_catalog()}
    tails = all(entries[i].tail_tol <= 1e-15 for i in INTEGRAL)
    ok = not bad and tails
    _log(acceptance_log, 4, ok, "Jackson-integral identities at 1e-8 with tails certified <= 1e-15")
    assert ok, bad


def test_5_operators(suite, acceptance_log):
    by_id = suite["by_id"]
    exact = _bad(by_id, ["op-hn-rep", "op-gn-rep"], 1e-12)
    bad = sorted(set(exact) | set(_bad(by_id, OPERATOR, 1e-8)))
    extra = f"; failing: {', '.join(bad)}" if bad else ""
    _log(acceptance_log, 5, not bad, f"T(yD) on x^n gives h_n/g_n to 1e-12 (n <= 15); operator identities at 1e-8{extra}")
    assert not exact
    _finish(bad, OPERATOR)


def test_6_expansion_round_trip(suite, acceptance_log):
    check = next(c for c in builtin_catalog() if c.id == "qpde-roundtrip-k1")
    r = run_check(check, SEED, 20)
    ctx = QContext(0.5)
    try:
        expand_in_h(BivariateOracle(lambda x, y: x, 1.0), 10, ctx)
        rejected = False
    except NotQPDESolution:
        rejected = True
    ok = r.verdict == "pass" and r.max_residual <= 1e-9 and rejected and suite["by_id"]["qpde-roundtrip-k2"]["verdict"] == "pass"
    _log(acceptance_log, 6, ok, f"20 random q-PDE solutions recovered (residual {r.max_residual:.1e}); f = x rejected")
    assert ok


def test_7_derivative_formulas(suite, acceptance_log):
    by_id = suite["by_id"]
    bad = _bad(by_id, DERIVATIVE[:2], 1e-9) + _bad(by_id, DERIVATIVE[2:], 1e-10)
    _log(acceptance_log, 7, not bad, "higher q-derivative formulas to 1e-9 (n <= 4); h/g recurrences to 1e-10 (n <= 15)")
    assert not bad


def test_8_negative_controls(suite, acceptance_log, tmp_path):
    by_id = suite["by_id"]
    all_fail = all(by_id[i]["verdict"] == "fail" and by_id[i]["ok"] for i in CONTROLS)
    code = run_cli(["run", "--ids", ",".join(CONTROLS), "--samples", "10", "--out", str(tmp_path / "c.txt")])
    agg = suite["report"]["aggregate"]
    # the full run exits 1 only because of the documented false displays
    full_code_ok = suite["code"] == (1 if agg["unexpected"] else 0) and set(agg["unexpected"]) <= KNOWN_FALSE
    ok = all_fail and code == 0 and full_code_ok
    _log(acceptance_log, 8, ok, f"all 3 controls fail; controls-only run exits {code}; full run exits {suite['code']}")
    assert ok


def test_9_determinism(suite, acceptance_log):
    code, again = _cli_report(suite["dir"] / "again.json", 1)
    _, parallel = _cli_report(suite["dir"] / "parallel.json", 8)
    base = _TIMING.sub("", suite["text"])
    same = _TIMING.sub("", again) == base
    jobs_same = _TIMING.sub("", parallel) == base and code == suite["code"]
    ok = same and jobs_same
    _log(acceptance_log, 9, ok, "repeat run byte-identical without timing; --jobs 1 and --jobs 8 identical")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([os.path.abspath(__file__), "-q", "-rA"]))
