"""Quadratic transformations and the Verma-Jain summations."""
from __future__ import annotations

from ..model import IdentityCheck
from ..sampling import C, I, Sampler, bounded, poch_safe
from ._kit import cancel_dps, fin, hyper, inf, sc, series

G = 0.9
TERM_TOL = 1e-10


def _q2(ctx):
    return ctx.with_base(ctx.q ** 2)


def _pre_ab(ctx, c2, al, a, b, m):
    """``(a^2 q^2, a^2 ab/q^2; q^2)_m / (a^2 a, a^2 b; q^2)_m`` in base ``q^2``."""
    q = ctx.q
    num = (al ** 2 * q ** 2, al ** 2 * a * b / q ** 2)
    den = (al ** 2 * a, al ** 2 * b)
    if m is None:
        return inf(c2, *num) / inf(c2, *den)
    return fin(c2, m, *num) / fin(c2, m, *den)


def _quad_rhs(ctx, p, m, variant):
    """Right sides of the two base-q^2 transformations and their limits."""
    al, a, b, lam = sc(ctx, p, "alpha a b lam")
    q = ctx.q
    c2 = _q2(ctx)

    def term(n):
        if m is None:
            base = fin(c2, n, al ** 2, q ** 2 / a, q ** 2 / b) / fin(c2, n, q ** 2, al ** 2 * a, al ** 2 * b)
            power = (-al ** 2 * lam * a * b) ** n * q ** (n * n - 3 * n)
        else:
            base = fin(c2, n, q ** (-2 * m), al ** 2, q ** 2 / a, q ** 2 / b) / fin(
                c2, n, q ** 2, al ** 2 * q ** (2 * m + 2), al ** 2 * a, al ** 2 * b
            )
            power = (al ** 2 * lam * a * b * q ** (2 * m - 2)) ** n
        if variant == "a":
            lead = (1 - al ** 2 * q ** (4 * n)) / (1 - al ** 2)
            ratio = fin(ctx, n, -q, al / lam) / fin(ctx, n, al, -q * lam)
        else:
            lead = (1 + al * q ** (2 * n)) / (1 + al)
            ratio = fin(ctx, n, -q, q * al / lam) / fin(ctx, n, al, -lam)
        return lead * base * ratio * power

    if m is None:
        return series(term, ctx)
    return sum(term(n) for n in range(m + 1))


def _quad_lhs(ctx, p, m, variant):
    al, a, b, lam = sc(ctx, p, "alpha a b lam")
    q = ctx.q
    c2 = _q2(ctx)
    if variant == "a":
        lower = [al, q * al, q ** 2 * lam ** 2]
    else:
        lower = [q * al, q ** 2 * al, lam ** 2]
    upper = [q ** 2 / a, q ** 2 / b, lam, q * lam]
    if m is None:
        return _pre_ab(ctx, c2, al, a, b, None) * hyper(c2, upper, lower, al ** 2 * a * b / q ** 2)
    upper = [q ** (-2 * m)] + upper
    lower = lower + [q ** 4 / (al ** 2 * a * b * q ** (2 * m))]
    return _pre_ab(ctx, c2, al, a, b, m) * hyper(c2, upper, lower, q ** 2)


def _qc_lhs(p, ctx, m):
    al, a, b = sc(ctx, p, "alpha a b")
    q = ctx.q
    r = ctx.sqrt(q * al)
    if m is None:
        pre = inf(ctx, al * q, al * a * b / q) / inf(ctx, al * a, al * b)
        return pre * hyper(ctx, [q / a, q / b, 0], [r, -r], al * a * b / q)
    pre = fin(ctx, m, al * q, al * a * b / q) / fin(ctx, m, al * a, al * b)
    return pre * hyper(ctx, [q ** (-m), q / a, q / b, 0], [r, -r, q ** 2 / (al * a * b * q ** m)], q)


def _qc_rhs(p, ctx, m):
    al, a, b = sc(ctx, p, "alpha a b")
    q = ctx.q
    c2 = _q2(ctx)

    def term(n):
        lead = (1 - al * q ** (4 * n)) / (1 - al) * fin(c2, n, q) / fin(c2, n, q * al)
        if m is None:
            core = fin(ctx, 2 * n, al, q / a, q / b) / fin(ctx, 2 * n, q, al * a, al * b)
            power = (-al ** 3 * a ** 2 * b ** 2) ** n * q ** (3 * n * n - 3 * n)
        else:
            core = fin(ctx, 2 * n, q ** (-m), al, q / a, q / b) / fin(ctx, 2 * n, q, al * q ** (m + 1), al * a, al * b)
            power = (-al ** 3 * a ** 2 * b ** 2 * q ** (2 * m - 2)) ** n * q ** (n * n)
        return lead * core * power

    if m is None:
        return series(term, ctx)
    return sum(term(n) for n in range(m // 2 + 1))


def _vj1_lhs(p, ctx):
    al, lam = sc(ctx, p, "alpha lam")
    q, n = ctx.q, p["n"]
    return hyper(_q2(ctx), [q ** (-2 * n), al ** 2 * q ** (2 * n), lam, q * lam], [al, q * al, q ** 2 * lam ** 2], q ** 2)


def _vj1_rhs(p, ctx):
    al, lam = sc(ctx, p, "alpha lam")
    q, n = ctx.q, p["n"]
    return lam ** n * fin(ctx, n, -q, al / lam) / fin(ctx, n, al, -q * lam)


def _vj2_lhs(p, ctx):
    al, lam = sc(ctx, p, "alpha lam")
    q, n = ctx.q, p["n"]
    return hyper(_q2(ctx), [q ** (-2 * n), al ** 2 * q ** (2 * n), lam, q * lam], [q * al, q ** 2 * al, lam ** 2], q ** 2)


def _vj2_rhs(p, ctx):
    al, lam = sc(ctx, p, "alpha lam")
    q, n = ctx.q, p["n"]
    return lam ** n * fin(ctx, n, -q, q * al / lam) * (1 - al) / (fin(ctx, n, al, -lam) * (1 - al * q ** (2 * n)))


def _vj3_lhs(p, ctx):
    (al,) = sc(ctx, p, "alpha")
    q, n = ctx.q, p["n"]
    r = ctx.sqrt(q * al)
    return hyper(ctx, [q ** (-n), al * q ** n, 0], [r, -r], q)


def _vj3_rhs(p, ctx):
    (al,) = sc(ctx, p, "alpha")
    q, n = ctx.q, p["n"]
    if n % 2:
        return ctx.scalar(0)
    l = n // 2
    c2 = _q2(ctx)
    return (-1) ** l * q ** (l * l) * fin(c2, l, q) * al ** l / fin(c2, l, q * al)


def _dps2(p):
    return cancel_dps(p["q"] ** 2, p.get("m", p.get("n", 8)))


def _ab_safe(p):
    q, al, a, b = p["q"], p["alpha"], p["a"], p["b"]
    return all(
        abs(1 - x * q ** (2 * k)) >= 1e-3 for x in (al ** 2 * a, al ** 2 * b) for k in range(40)
    ) and abs(1 - al ** 2) >= 1e-3


def _lam_safe(p):
    q, al, lam = p["q"], p["alpha"], p["lam"]
    return all(
        abs(1 - x * q ** k) >= 1e-3
        for x in (al, -q * lam, -lam, lam ** 2, q * q * lam ** 2, q * al, q * q * al)
        for k in range(60)
    )


def _term_safe(p):
    q, al, a, b, m = p["q"], p["alpha"], p["a"], p["b"], p["m"]
    x = q ** 4 / (al ** 2 * a * b * q ** (2 * m))
    return all(abs(1 - x * q ** (2 * k)) >= 1e-3 and abs(1 - al ** 2 * q ** (2 * m + 2 + 2 * k)) >= 1e-3 for k in range(m + 1))


_Q_BOXES = {"alpha": C(0.05, 0.9), "a": C(0.3, 2.0), "b": C(0.3, 2.0), "lam": C(0.1, 2.0)}


def _quad_entry(variant, limit):
    suffix = "-limit" if limit else ""
    cid = f"quad-{variant}{suffix}"
    if limit:
        sampler = Sampler(
            dict(_Q_BOXES),
            (bounded(0.9 * G, lambda p: p["alpha"] ** 2 * p["a"] * p["b"] / p["q"] ** 2), _ab_safe, _lam_safe),
        )
        lhs = lambda p, ctx: _quad_lhs(ctx, p, None, variant)
        rhs = lambda p, ctx: _quad_rhs(ctx, p, None, variant)
        ref = f"m -> infinity limit of the base-q^2 quadratic transformation ({variant})"
    else:
        sampler = Sampler({**_Q_BOXES, "m": I(0, 8)}, (_ab_safe, _lam_safe, _term_safe))
        lhs = lambda p, ctx: _quad_lhs(ctx, p, p["m"], variant)
        rhs = lambda p, ctx: _quad_rhs(ctx, p, p["m"], variant)
        ref = f"terminating base-q^2 quadratic transformation ({variant})"
    return IdentityCheck(
        id=cid,
        paper_ref=ref,
        mode="numeric",
        group="nonterminating" if limit else "terminating",
        lhs=lhs,
        rhs=rhs,
        sampler=sampler,
        tol=None if limit else TERM_TOL,
        dps=30 if limit else _dps2,
    )


def _c_safe(p):
    q, al, a, b = p["q"], p["alpha"], p["a"], p["b"]
    xs = (al * a, al * b, (q * al) ** 0.5, -(q * al) ** 0.5)
    return all(abs(1 - x * q ** k) >= 1e-3 for x in xs for k in range(60)) and abs(1 - al) >= 1e-3


def _c_term_safe(p):
    q, al, a, b, m = p["q"], p["alpha"], p["a"], p["b"], p["m"]
    x = q ** 2 / (al * a * b * q ** m)
    return all(abs(1 - x * q ** k) >= 1e-3 and abs(1 - al * q ** (m + 1 + k)) >= 1e-3 for k in range(m + 1))


_C_BOXES = {"alpha": C(0.05, 0.9), "a": C(0.3, 2.0), "b": C(0.3, 2.0)}

CHECKS = [
    _quad_entry("a", False),
    _quad_entry("a", True),
    _quad_entry("b", False),
    _quad_entry("b", True),
    IdentityCheck(
        id="quad-c",
        paper_ref="terminating quadratic transformation with a zero upper parameter and lower +-sqrt(q alpha)",
        mode="numeric",
        group="terminating",
        lhs=lambda p, ctx: _qc_lhs(p, ctx, p["m"]),
        rhs=lambda p, ctx: _qc_rhs(p, ctx, p["m"]),
        sampler=Sampler({**_C_BOXES, "m": I(0, 8)}, (_c_safe, _c_term_safe)),
        tol=TERM_TOL,
        dps=lambda p: cancel_dps(p["q"], p["m"]),
    ),
    IdentityCheck(
        id="quad-c-limit",
        paper_ref="m -> infinity limit of the quadratic transformation with lower +-sqrt(q alpha)",
        mode="numeric",
        group="nonterminating",
        lhs=lambda p, ctx: _qc_lhs(p, ctx, None),
        rhs=lambda p, ctx: _qc_rhs(p, ctx, None),
        sampler=Sampler(dict(_C_BOXES), (bounded(0.9 * G, lambda p: p["alpha"] * p["a"] * p["b"] / p["q"]), _c_safe)),
        dps=30,
    ),
    IdentityCheck(
        id="verma-jain-1",
        paper_ref="Verma-Jain summation of a terminating base-q^2 4phi3 (lower alpha, q alpha, q^2 lambda^2)",
        mode="numeric",
        group="terminating",
        lhs=_vj1_lhs,
        rhs=_vj1_rhs,
        sampler=Sampler({"alpha": C(0.05, 0.9), "lam": C(0.1, 2.0), "n": I(0, 8)}, (_lam_safe,)),
        tol=TERM_TOL,
        dps=_dps2,
    ),
    IdentityCheck(
        id="verma-jain-2",
        paper_ref="Verma-Jain summation of a terminating base-q^2 4phi3 (lower q alpha, q^2 alpha, lambda^2)",
        mode="numeric",
        group="terminating",
        lhs=_vj2_lhs,
        rhs=_vj2_rhs,
        sampler=Sampler({"alpha": C(0.05, 0.9), "lam": C(0.1, 2.0), "n": I(0, 8)}, (_lam_safe,)),
        tol=TERM_TOL,
        dps=_dps2,
    ),
    IdentityCheck(
        id="verma-jain-3",
        paper_ref="terminating 3phi2 with lower +-sqrt(q alpha): zero for odd n, closed form for even n",
        mode="numeric",
        group="terminating",
        lhs=_vj3_lhs,
        rhs=_vj3_rhs,
        sampler=Sampler(
            {"alpha": C(0.05, 0.9), "n": I(0, 8)},
            (lambda p: all(abs(1 - s * (p["q"] * p["alpha"]) ** 0.5 * p["q"] ** k) >= 1e-3 for s in (1, -1) for k in range(9)),),
        ),
        tol=TERM_TOL,
        dps=lambda p: cancel_dps(p["q"], p["n"]),
    ),
]
