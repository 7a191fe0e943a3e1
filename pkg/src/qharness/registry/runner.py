"""Sampling loop, residuals and verdicts."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from ..errors import UnknownId
from ..fps import QSeries
from ..qcore import QContext, is_finite
from .model import CheckResult, IdentityCheck, SampleRecord
from .sampling import rng_for

DEFAULT_TOL = 1e-8
DEFAULT_ORDER = 100


def _as_list(v):
    if isinstance(v, (list, tuple)):
        return list(v)
    return [v]


def residual(lhs, rhs) -> float:
    """``max |L - R| / (1 + max(|L|, |R|))`` over paired components."""
    ls, rs = _as_list(lhs), _as_list(rhs)
    if len(ls) != len(rs):
        raise ValueError(f"lhs has {len(ls)} components, rhs has {len(rs)}")
    worst = 0.0
    for a, b in zip(ls, rs):
        if not (is_finite(a) and is_finite(b)):
            return float("inf")
        a, b = complex(a), complex(b)
        worst = max(worst, abs(a - b) / (1.0 + max(abs(a), abs(b))))
    return worst


def _plain(v):
    """Reduce evaluator output to builtin numbers for reporting."""
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (int, float, complex)):
        return v
    try:
        return complex(v)
    except TypeError:
        return repr(v)


def effective_tol(check: IdentityCheck, run_tol: float) -> float:
    if check.mode == "formal":
        return 0.0
    return run_tol if check.tol is None else min(check.tol, run_tol)


def _run_formal(check: IdentityCheck, order: int) -> list:
    rec = SampleRecord(params={"order": order})
    try:
        left, right = check.lhs(order), check.rhs(order)
        if not (isinstance(left, QSeries) and isinstance(right, QSeries)):
            raise TypeError("formal evaluators must return QSeries")
        j = left.first_difference(right)
        if j is None and left.order == right.order:
            rec.lhs = rec.rhs = f"equal to q^{order}"
        else:
            j = j if j is not None else min(left.order, right.order) + 1
            rec.residual = 1.0
            rec.lhs = f"q^{j}: {left.coeffs[j] if j <= left.order else 'missing'}"
            rec.rhs = f"q^{j}: {right.coeffs[j] if j <= right.order else 'missing'}"
    except Exception as exc:  # recorded, not raised
        rec.error = f"{type(exc).__name__}: {exc}"
    return [rec]


def _run_numeric(check: IdentityCheck, seed: int, nsamples: int) -> list:
    rng = rng_for(seed, check.id)
    records = []
    for _ in range(nsamples):
        params = check.sampler(rng)
        rec = SampleRecord(params=params)
        try:
            ctx = QContext(
                params["q"],
                dps=check.working_dps(params),
                max_terms=check.max_terms,
                tail_tol=check.tail_tol,
            )
            left = check.lhs(params, ctx)
            right = check.rhs(params, ctx)
            rec.lhs, rec.rhs = _plain(left), _plain(right)
            rec.residual = residual(left, right)
        except Exception as exc:
            rec.error = f"{type(exc).__name__}: {exc}"
        records.append(rec)
    return records


def run_check(
    check: IdentityCheck,
    seed: int,
    nsamples: int,
    tol: float = DEFAULT_TOL,
    order: int = DEFAULT_ORDER,
) -> CheckResult:
    """Run one entry.  Deterministic in ``(seed, nsamples, tol, order)``."""
    if nsamples < 1:
        raise ValueError("nsamples must be at least 1")
    t0 = time.perf_counter()
    if check.mode == "formal":
        records = _run_formal(check, order)
    else:
        records = _run_numeric(check, seed, nsamples)
    tol_eff = effective_tol(check, tol)
    if any(r.error for r in records):
        verdict = "error"
    elif all(r.residual <= tol_eff for r in records):
        verdict = "pass"
    else:
        verdict = "fail"
    worst = max((r.residual for r in records if not r.error), default=float("nan"))
    return CheckResult(
        id=check.id,
        paper_ref=check.paper_ref,
        mode=check.mode,
        group=check.group,
        verdict=verdict,
        max_residual=worst,
        tol=tol_eff,
        seed=seed,
        expect_fail=check.expect_fail,
        samples=records,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


def resolve(ids) -> list:
    """Catalog entries for ``ids`` (``None`` or ``"ALL"`` means every entry)."""
    from .catalog import builtin_catalog

    catalog = builtin_catalog()
    if ids is None or ids == "ALL":
        return catalog
    by_id = {c.id: c for c in catalog}
    missing = [i for i in ids if i not in by_id]
    if missing:
        raise UnknownId(", ".join(missing))
    wanted = set(ids)
    # catalog order, not request order
    return [c for c in catalog if c.id in wanted]


def _worker(args):
    check_id, seed, nsamples, tol, order = args
    (check,) = resolve([check_id])
    return run_check(check, seed, nsamples, tol, order)


def run_suite(
    ids: Sequence | str | None,
    seed: int,
    nsamples: int,
    tol: float = DEFAULT_TOL,
    order: int = DEFAULT_ORDER,
    jobs: int = 1,
) -> list:
    """Run entries and return results in catalog order."""
    checks = resolve(ids)
    if jobs <= 1 or len(checks) <= 1:
        return [run_check(c, seed, nsamples, tol, order) for c in checks]
    tasks = [(c.id, seed, nsamples, tol, order) for c in checks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_worker, tasks))


def suite_ok(results: Sequence) -> bool:
    return all(r.ok for r in results)
