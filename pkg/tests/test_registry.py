from __future__ import annotations

import dataclasses
import math

import pytest

from qharness import UnknownId
from qharness.registry import builtin_catalog, residual, resolve, run_check, run_suite, suite_ok
from qharness.registry.model import GROUPS, MODES, IdentityCheck
from qharness.registry.sampling import Q_CHOICES, C, Sampler, rng_for

REQUIRED = """
gen-h gen-g mehler-h mehler-g carlitz-shift-gf carlitz-mehler rogers-6phi5 rogers-ext irs-3phi2
watson-whipple pfaff-saalschutz chu-vandermonde qbinomial-theorem andrews-askey aa-ext
sears-av-integral operator-integral integral-3phi2 ramanujan-reciprocity liu-reciprocity
kang-reciprocity chu-zhang-reciprocity poch-flip liu-expansion-f liu-lemma terminating-transform
transform-5phi4 ext-watson nonterminating-transform quad-a quad-a-limit quad-b quad-b-limit quad-c
quad-c-limit verma-jain-1 verma-jain-2 verma-jain-3 rogers-selberg-1 rogers-selberg-2
rogers-selberg-3 rogers-mod14-1 rogers-mod14-2 rs1-theta multilinear-gf-k1 multilinear-gf-k2
andrews-lauricella-k1 andrews-lauricella-k2 op-cliupp-i op-cliupp-ii op-3phi2 op-3phi2-inv
ext-q-gauss ext-q-euler ext-sears-4phi3 sears-3phi2 higher-qderiv-1 higher-qderiv-2 h-recurrence
g-recurrence qpde-roundtrip-k1 qpde-roundtrip-k2
""".split()


def by_id(i):
    return next(c for c in builtin_catalog() if c.id == i)


# -- catalog -------------------------------------------------------------------------

def test_catalog_shape():
    cat = builtin_catalog()
    ids = [c.id for c in cat]
    assert len(ids) == len(set(ids))
    assert len(cat) >= 50
    assert "rogers-selberg-1" in ids
    assert not set(REQUIRED) - set(ids)


def test_catalog_entries_are_well_formed():
    for c in builtin_catalog():
        assert c.mode in MODES and c.group in GROUPS
        assert c.paper_ref
        assert (c.sampler is None) == (c.mode == "formal")


def test_three_negative_controls():
    controls = [c for c in builtin_catalog() if c.expect_fail]
    assert len(controls) == 3
    assert all(c.group == "control" for c in controls)


def test_numeric_entry_needs_sampler():
    with pytest.raises(ValueError):
        IdentityCheck("x", "ref", "numeric", "nonterminating", lambda p, c: 0, lambda p, c: 0)


# -- residuals and sampling ---------------------------------------------------------

def test_residual_formula():
    assert residual(1.0, 1.0) == 0
    assert residual(3.0, 1.0) == pytest.approx(0.5)
    assert residual([1, 2], [1, 2 + 3j]) == pytest.approx(abs(3j) / (1 + abs(2 + 3j)))
    assert residual(float("nan"), 1.0) == math.inf
    with pytest.raises(ValueError):
        residual([1, 2], [1])


def test_rng_streams_depend_on_seed_and_id():
    a = rng_for(7, "gen-h").random()
    assert a == rng_for(7, "gen-h").random()
    assert a != rng_for(8, "gen-h").random()
    assert a != rng_for(7, "gen-g").random()


def test_sampler_respects_boxes_and_constraints():
    s = Sampler({"t": C(0.05, 0.9)}, (lambda p: abs(p["t"]) < 0.5,))
    rng = rng_for(1, "x")
    for _ in range(200):
        p = s(rng)
        assert p["q"] in Q_CHOICES
        assert 0.05 <= abs(p["t"]) < 0.5


# -- running checks -----------------------------------------------------------------

def test_gen_h_passes():
    r = run_check(by_id("gen-h"), seed=1, nsamples=50)
    assert r.verdict == "pass" and r.max_residual <= 1e-8 and r.nsamples == 50


def test_perturbed_clone_fails():
    c = by_id("gen-h")
    bad = dataclasses.replace(c, id="gen-h-bad", rhs=lambda p, ctx: c.rhs(p, ctx) * (1 + 1e-3))
    assert run_check(bad, seed=1, nsamples=10).verdict == "fail"


def test_evaluator_errors_are_recorded():
    def boom(p, ctx):
        raise ZeroDivisionError("boom")

    c = dataclasses.replace(by_id("gen-h"), id="boom", lhs=boom)
    r = run_check(c, seed=1, nsamples=3)
    assert r.verdict == "error" and all(s.error for s in r.samples)


def test_same_seed_same_parameters():
    c = by_id("mehler-h")
    a = run_check(c, seed=11, nsamples=8)
    b = run_check(c, seed=11, nsamples=8)
    assert [s.params for s in a.samples] == [s.params for s in b.samples]
    assert [s.residual for s in a.samples] == [s.residual for s in b.samples]


def test_run_tol_only_tightens():
    c = by_id("gen-h")
    assert run_check(c, 1, 2, tol=1e-3).tol == 1e-3
    tight = dataclasses.replace(c, id="tight", tol=1e-12)
    assert run_check(tight, 1, 2, tol=1e-8).tol == 1e-12


def test_formal_entries_are_exact():
    r = run_check(by_id("rogers-selberg-1"), seed=0, nsamples=1, order=60)
    assert r.verdict == "pass" and r.max_residual == 0 and r.tol == 0


def test_formal_mismatch_is_located():
    r = run_check(by_id("control-rs-mismatch"), seed=0, nsamples=1, order=30)
    assert r.verdict == "fail" and r.ok
    assert r.samples[0].lhs.startswith("q^")


def test_halving_tail_tol_keeps_residuals():
    for i in ("gen-h", "rogers-6phi5"):
        c = by_id(i)
        a = run_check(c, 5, 10)
        b = run_check(dataclasses.replace(c, tail_tol=c.tail_tol / 2), 5, 10)
        assert a.verdict == b.verdict == "pass"
        for x, y in zip(a.samples, b.samples):
            assert y.residual <= max(10 * x.residual, 1e-15)


# -- suites ---------------------------------------------------------------------------

def test_unknown_id():
    with pytest.raises(UnknownId):
        run_suite(["no-such-id"], 1, 1)
    with pytest.raises(UnknownId):
        resolve(["gen-h", "no-such-id"])


def test_results_follow_catalog_order():
    res = run_suite(["rogers-selberg-1", "gen-h", "control-gen-h-scaled"], 3, 4)
    assert [r.id for r in res] == ["gen-h", "rogers-selberg-1", "control-gen-h-scaled"]
    assert suite_ok(res)


def test_parallel_matches_serial():
    ids = ["gen-h", "mehler-g", "pfaff-saalschutz", "rogers-mod14-1"]
    serial = run_suite(ids, 9, 5, jobs=1)
    parallel = run_suite(ids, 9, 5, jobs=2)
    for a, b in zip(serial, parallel):
        assert (a.id, a.verdict, a.max_residual) == (b.id, b.verdict, b.max_residual)
        assert [s.params for s in a.samples] == [s.params for s in b.samples]
