"""q-derivative formulas, the h/g recurrences and the expansion round trip.

These entries sample only ``q`` and the integer or polynomial data; the
relations are evaluated on fixed probe points.
"""
from __future__ import annotations

import cmath

from ...qcalculus import (
    BivariateOracle,
    MaclaurinSeries,
    expand_in_h,
    expand_in_h2,
    poch_ratio_series,
    probe_grid,
    qderiv_series,
    qexp_T,
    qpartial_point,
)
from ...qpoly import g, h
from ..model import IdentityCheck
from ..sampling import C, I, Sampler, seq
from ._kit import fin, inf, sc
from .operators import _gauss_rows

# |x| <= 0.4 on these, so |s x| < 1/2 for the sampled s
_X_GRID = [0.4 * r * cmath.exp(1j * a) for r, a in ((0.3, 0.2), (0.55, 1.9), (0.8, -2.4), (1.0, 0.9), (0.65, 3.0))]

SERIES_ORDER = 120


def _series_at_grid(s: MaclaurinSeries):
    return [s(x) for x in _X_GRID]


def _qd1_lhs(p, ctx):
    (s,) = sc(ctx, p, "s")
    f = poch_ratio_series([], [s], ctx, SERIES_ORDER)
    return _series_at_grid(qderiv_series(f, p["n"], ctx))


def _qd1_rhs(p, ctx):
    (s,) = sc(ctx, p, "s")
    return [s ** p["n"] / inf(ctx, s * x) for x in _X_GRID]


def _qd2_lhs(p, ctx):
    s, t = sc(ctx, p, "s t")
    f = poch_ratio_series([t], [s], ctx, SERIES_ORDER)
    return _series_at_grid(qderiv_series(f, p["n"], ctx))


def _qd2_rhs(p, ctx):
    s, t = sc(ctx, p, "s t")
    n, q = p["n"], ctx.q
    return [s ** n * fin(ctx, n, t / s) * inf(ctx, q ** n * t * x) / inf(ctx, s * x) for x in _X_GRID]


# the recurrences are checked on this grid (|x|, |y| <= 0.9)
_REC_RADIUS = 2.0


def _rec_lhs(inverse):
    poly = g if inverse else h

    def lhs(p, ctx):
        n = p["n"]
        f = BivariateOracle(lambda x, y: poly(n, x, y, ctx), _REC_RADIUS)
        out = []
        for x, y in probe_grid(_REC_RADIUS, ctx):
            out.append(qpartial_point(f, "x", x, y, ctx, inverse_q=inverse))
            out.append(qpartial_point(f, "y", x, y, ctx, inverse_q=inverse))
        return out

    return lhs


def _rec_rhs(inverse):
    def rhs(p, ctx):
        n, q = p["n"], ctx.q
        m = n - 1
        row = _gauss_rows(m, q)
        factor = 1 - q ** (-n if inverse else n)
        out = []
        for x, y in probe_grid(_REC_RADIUS, ctx):
            x, y = ctx.scalar(x), ctx.scalar(y)
            prev = sum(row[k] * (q ** (k * (k - m)) if inverse else 1) * x ** k * y ** (m - k) for k in range(m + 1))
            out += [factor * prev, factor * prev]
        return out

    return rhs


# -- expansion round trip ---------------------------------------------------------

ROUNDTRIP_RADIUS = 1.0
DEG1, DEG2 = 10, 4


def _poly_extra(rng, p):
    d = rng.randint(0, DEG1)
    return {"p": seq(rng, d + 1) + [0j] * (DEG1 - d)}


def _solution(p, ctx):
    """``(x, y) -> T(y D_q){p}(x)`` straight from the operator's definition."""
    s = MaclaurinSeries([ctx.scalar(c) for c in p["p"]])
    return BivariateOracle(lambda x, y: qexp_T(y, s, ctx)(ctx.scalar(x)), ROUNDTRIP_RADIUS)


def _probe(ctx):
    return probe_grid(ROUNDTRIP_RADIUS, ctx, n=3)


def _rt1_lhs(p, ctx):
    f = _solution(p, ctx)
    e = expand_in_h(f, DEG1, ctx)
    return list(e.alphas) + [e(x, y) for x, y in _probe(ctx)]


def _rt1_rhs(p, ctx):
    f = _solution(p, ctx)
    return list(p["p"]) + [f(x, y) for x, y in _probe(ctx)]


def _poly2_extra(rng, p):
    return {"p2": [seq(rng, DEG2 + 1) for _ in range(DEG2 + 1)]}


def _solution2(p, ctx):
    coeffs = p["p2"]

    def f(x1, y1, x2, y2):
        h1 = [qexp_T(y1, MaclaurinSeries.monomial(m), ctx)(ctx.scalar(x1)) for m in range(DEG2 + 1)]
        h2 = [qexp_T(y2, MaclaurinSeries.monomial(m), ctx)(ctx.scalar(x2)) for m in range(DEG2 + 1)]
        return sum(coeffs[m][n] * h1[m] * h2[n] for m in range(DEG2 + 1) for n in range(DEG2 + 1))

    return f


def _probe2(ctx):
    pts = _probe(ctx)[::2]
    return [(a, b, c, d) for (a, b) in pts for (c, d) in pts[::2]]


def _rt2_lhs(p, ctx):
    f = _solution2(p, ctx)
    e = expand_in_h2(f, ROUNDTRIP_RADIUS, DEG2, ctx)
    return [a for row in e.alphas for a in row] + [e(*z) for z in _probe2(ctx)]


def _rt2_rhs(p, ctx):
    f = _solution2(p, ctx)
    return [a for row in p["p2"] for a in row] + [f(*z) for z in _probe2(ctx)]


CHECKS = [
    IdentityCheck(
        id="higher-qderiv-1",
        paper_ref="D_q^n {1/(sx)_inf} = s^n/(sx)_inf",
        mode="derivative",
        group="derivative",
        lhs=_qd1_lhs,
        rhs=_qd1_rhs,
        sampler=Sampler({"s": C(0.05, 1.2), "n": I(0, 4)}),
        tol=1e-9,
    ),
    IdentityCheck(
        id="higher-qderiv-2",
        paper_ref="D_q^n {(tx)_inf/(sx)_inf} = s^n (t/s)_n (q^n tx)_inf/(sx)_inf",
        mode="derivative",
        group="derivative",
        lhs=_qd2_lhs,
        rhs=_qd2_rhs,
        sampler=Sampler({"s": C(0.05, 1.2), "t": C(0.05, 1.5), "n": I(0, 4)}),
        tol=1e-9,
    ),
    IdentityCheck(
        id="h-recurrence",
        paper_ref="q-partials of h_n(x, y|q) in x and in y both equal (1 - q^n) h_(n-1)",
        mode="derivative",
        group="derivative",
        lhs=_rec_lhs(False),
        rhs=_rec_rhs(False),
        sampler=Sampler({"n": I(1, 15)}),
        tol=1e-10,
    ),
    IdentityCheck(
        id="g-recurrence",
        paper_ref="1/q-partials of g_n(x, y|q) in x and in y both equal (1 - q^-n) g_(n-1)",
        mode="derivative",
        group="derivative",
        lhs=_rec_lhs(True),
        rhs=_rec_rhs(True),
        sampler=Sampler({"n": I(1, 15)}),
        tol=1e-10,
    ),
    IdentityCheck(
        id="qpde-roundtrip-k1",
        paper_ref="solutions of the q-PDE d_x f = d_y f expand in h_n(x, y|q); coefficients and reconstruction",
        mode="derivative",
        group="derivative",
        lhs=_rt1_lhs,
        rhs=_rt1_rhs,
        sampler=Sampler({}, extra=_poly_extra),
        tol=1e-9,
    ),
    IdentityCheck(
        id="qpde-roundtrip-k2",
        paper_ref="two-pair q-PDE solutions expand in h_m(x1, y1|q) h_n(x2, y2|q)",
        mode="derivative",
        group="derivative",
        lhs=_rt2_lhs,
        rhs=_rt2_rhs,
        sampler=Sampler({}, extra=_poly2_extra),
        tol=1e-9,
    ),
]
