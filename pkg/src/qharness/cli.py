"""Command-line harness: list, run and report identity checks, or evaluate a primitive.

Exit codes: 0 all selected checks behave as expected, 1 some check failed,
2 usage error, 3 an evaluator raised.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from .errors import QSeriesError, UnknownId
from .registry import builtin_catalog, resolve, run_suite
from .registry.runner import DEFAULT_ORDER, DEFAULT_TOL

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- argument parsing ------------------------------------------------------------

def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {s}")
    return v


def _positive_float(s):
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {s}")
    return v


def _seed(s):
    v = int(s)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _complex_list(s):
    return [complex(x) for x in s.split(",") if x.strip()] if s else []


def _parser():
    p = _Parser(prog="qharness", description="q-series identity harness")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ls = sub.add_parser("list", help="print catalog ids with their anchors")
    ls.add_argument("--format", choices=("text", "json", "csv"), default="text")
    ls.add_argument("--out")

    run = sub.add_parser("run", help="run identity checks")
    which = run.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true")
    which.add_argument("--ids", type=lambda s: [x.strip() for x in s.split(",") if x.strip()])
    run.add_argument("--seed", type=_seed, default=42)
    run.add_argument("--samples", type=_positive_int, default=50)
    run.add_argument("--order", type=_positive_int, default=DEFAULT_ORDER)
    run.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    run.add_argument("--format", choices=("text", "json", "csv"), default="text")
    run.add_argument("--out")
    run.add_argument("--jobs", type=_positive_int, default=os.cpu_count() or 1)

    ev = sub.add_parser("eval", help="evaluate one primitive")
    ev.add_argument("what", choices=("poch", "phi", "h", "g", "jackson"))
    ev.add_argument("--q", type=float, required=True)
    ev.add_argument("--dps", type=_positive_int, help="mpmath digits; doubles if omitted")
    ev.add_argument("--a", type=complex, help="poch base")
    ev.add_argument("--n", type=int, help="poch length (omit for infinite) or polynomial degree")
    ev.add_argument("--upper", type=_complex_list, default=[])
    ev.add_argument("--lower", type=_complex_list, default=[])
    ev.add_argument("--z", type=complex)
    ev.add_argument("--x", type=complex)
    ev.add_argument("--y", type=complex)
    ev.add_argument("--lo", type=complex, help="lower endpoint of the q-integral")
    ev.add_argument("--hi", type=complex, help="upper endpoint of the q-integral")
    ev.add_argument("--num", type=_complex_list, default=[], help="c_i of prod (c_i x)_inf in the integrand")
    ev.add_argument("--den", type=_complex_list, default=[], help="d_j of prod 1/(d_j x)_inf in the integrand")
    ev.add_argument("--format", choices=("text", "json"), default="text")
    return p


# -- report building ---------------------------------------------------------------

def _jsonable(v):
    """Complex numbers become [re, im]; non-finite floats become strings."""
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return v if math.isfinite(v) else str(v)
    if isinstance(v, complex):
        return [_jsonable(v.real), _jsonable(v.imag)]
    try:
        return _jsonable(complex(v))
    except TypeError:
        return repr(v)


def _worst(result):
    rec = next((s for s in result.samples if s.error), None)
    if rec is None:
        rec = max(result.samples, key=lambda s: s.residual)
    out = {"params": rec.params, "lhs": rec.lhs, "rhs": rec.rhs}
    if rec.error:
        out["error"] = rec.error
    return out


def _record(r):
    return {
        "id": r.id,
        "paper_ref": r.paper_ref,
        "mode": r.mode,
        "group": r.group,
        "verdict": r.verdict,
        "expect_fail": r.expect_fail,
        "ok": r.ok,
        "max_residual": r.max_residual,
        "tol": r.tol,
        "nsamples": r.nsamples,
        "worst_sample": _worst(r),
        "elapsed_ms": round(r.elapsed_ms, 3),
    }


def _aggregate(results):
    return {
        "total": len(results),
        "pass": sum(r.verdict == "pass" for r in results),
        "fail": sum(r.verdict == "fail" for r in results),
        "error": sum(r.verdict == "error" for r in results),
        "expected_failures": sum(r.expect_fail for r in results),
        "unexpected": [r.id for r in results if not r.ok],
        "verdict": "pass" if all(r.ok for r in results) else "fail",
    }


def build_report(results, config: dict) -> dict:
    return {
        "suite_seed": config["seed"],
        "config": config,
        "results": [_record(r) for r in results],
        "aggregate": _aggregate(results),
    }


def _fmt_res(x):
    return f"{x:.3e}" if isinstance(x, float) else str(x)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(report), indent=2, sort_keys=False) + "\n"
    rows = report["results"]
    if fmt == "csv":
        buf = io.StringIO()
        cols = ["id", "paper_ref", "mode", "verdict", "max_residual", "nsamples", "worst_sample", "elapsed_ms"]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            flat = dict(r, worst_sample=json.dumps(_jsonable(r["worst_sample"])))
            w.writerow([_jsonable(flat[c]) for c in cols])
        return buf.getvalue()
    lines = []
    for r in rows:
        mark = "ok " if r["ok"] else "BAD"
        note = " (negative control)" if r["expect_fail"] else ""
        lines.append(
            f"{mark} {r['id']:<26} {r['verdict']:<5} max_residual={_fmt_res(r['max_residual']):<10} "
            f"n={r['nsamples']:<3} {r['elapsed_ms'] / 1e3:7.2f}s{note}"
        )
    a = report["aggregate"]
    lines.append(
        f"{a['total']} checks: {a['pass']} pass, {a['fail']} fail, {a['error']} error; "
        f"suite {a['verdict']}" + (f" (unexpected: {', '.join(a['unexpected'])})" if a["unexpected"] else "")
    )
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -----------------------------------------------------------------

def _cmd_list(args) -> int:
    cat = builtin_catalog()
    rows = [{"id": c.id, "mode": c.mode, "group": c.group, "expect_fail": c.expect_fail, "paper_ref": c.paper_ref} for c in cat]
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = "".join(f"{r['id']:<26} {r['mode']:<10} {r['group']:<15} {r['paper_ref']}\n" for r in rows)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_run(args) -> int:
    ids = "ALL" if args.all else args.ids
    # unknown ids are rejected before any work starts
    checks = resolve(ids)
    config = {
        "ids": "ALL" if args.all else [c.id for c in checks],
        "seed": args.seed,
        "samples": args.samples,
        "order": args.order,
        "tol": args.tol,
    }
    results = run_suite(ids, args.seed, args.samples, args.tol, args.order, jobs=args.jobs)
    _emit(render(build_report(results, config), args.format), args.out)
    if any(r.verdict == "error" for r in results):
        return EXIT_ERROR
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"eval {args.what} needs " + ", ".join("--" + n for n in missing))


def evaluate(args):
    """Value of the primitive described by parsed ``eval`` arguments."""
    from . import qcore, qhyper, qpoly
    from .qcalculus import jackson_qintegral_with_tail

    ctx = qcore.QContext(args.q, dps=args.dps)
    if args.what == "poch":
        _need(args, "a")
        if args.n is None:
            return qcore.qpoch_infinite(args.a, ctx)
        return qcore.qpoch_finite(args.a, ctx, args.n)
    if args.what == "phi":
        _need(args, "z")
        return qhyper.phi(args.upper, args.lower, args.z, ctx)
    if args.what in ("h", "g"):
        _need(args, "n", "x", "y")
        poly = qpoly.rogers_szego if args.what == "h" else qpoly.stieltjes_wigert
        return poly(qpoly.PolyArgs(ctx.scalar(args.x), ctx.scalar(args.y), args.n, ctx))
    _need(args, "lo", "hi")

    def f(x):
        out = ctx.scalar(1)
        for c in args.num:
            out *= qcore.qpoch_infinite(ctx.scalar(c) * x, ctx)
        for d in args.den:
            out /= qcore.qpoch_infinite(ctx.scalar(d) * x, ctx)
        return out

    value, _ = jackson_qintegral_with_tail(f, args.lo, args.hi, ctx)
    return value


def _cmd_eval(args) -> int:
    value = complex(evaluate(args))
    if args.format == "json":
        sys.stdout.write(json.dumps({"value": _jsonable(value)}) + "\n")
    else:
        sys.stdout.write(f"{value.real!r} {value.imag:+.17g}j\n")
    return EXIT_OK


def run_cli(argv) -> int:
    try:
        args = _parser().parse_args(list(argv))
        if args.command == "list":
            return _cmd_list(args)
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_eval(args)
    except UsageError as exc:
        sys.stderr.write(f"qharness: usage error: {exc}\n")
        return EXIT_USAGE
    except UnknownId as exc:
        sys.stderr.write(f"qharness: unknown id: {exc.args[0]}\n")
        return EXIT_USAGE
    except (QSeriesError, ZeroDivisionError, ArithmeticError, ValueError) as exc:
        sys.stderr.write(f"qharness: evaluation failed: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR


def main():
    sys.exit(run_cli(sys.argv[1:]))
