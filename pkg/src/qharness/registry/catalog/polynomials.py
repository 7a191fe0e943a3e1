"""Generating functions for the Rogers-Szego and Stieltjes-Wigert polynomials."""
from __future__ import annotations

from ...qcore import qpoch_finite
from ...qpoly import PolyArgs, carlitz_hk, h, stieltjes_wigert_scaled
from ...qcore import qbinomial_row
from ..model import IdentityCheck
from ..sampling import C, I, Sampler, bounded, poch_safe
from ._kit import fin, hyper, inf, sc, series

G = 0.9  # shrink factor on every convergence bound


def _gen_h_lhs(p, ctx):
    x, y, t = sc(ctx, p, "x y t")
    return series(lambda n: h(n, x, y, ctx) * t ** n / fin(ctx, n, ctx.q), ctx)


def _gen_h_rhs(p, ctx):
    x, y, t = sc(ctx, p, "x y t")
    return 1 / inf(ctx, x * t, y * t)


def _ghat(n, x, y, ctx):
    return stieltjes_wigert_scaled(PolyArgs(x, y, n, ctx))


def _gen_g_lhs(p, ctx):
    # q^{n(n-1)/2} g_n = q^{n^2/4 - n/2} ghat_n
    x, y, t = sc(ctx, p, "x y t")
    q = ctx.q
    return series(
        lambda n: (-1) ** n * q ** (n * n / 4 - n / 2) * _ghat(n, x, y, ctx) * t ** n / fin(ctx, n, q),
        ctx,
    )


def _gen_g_rhs(p, ctx):
    x, y, t = sc(ctx, p, "x y t")
    return inf(ctx, x * t, y * t)


def _mehler_h_lhs(p, ctx):
    x, y, u, v, t = sc(ctx, p, "x y u v t")
    return series(lambda n: h(n, x, y, ctx) * h(n, u, v, ctx) * t ** n / fin(ctx, n, ctx.q), ctx)


def _mehler_h_rhs(p, ctx):
    x, y, u, v, t = sc(ctx, p, "x y u v t")
    return inf(ctx, x * y * u * v * t * t) / inf(ctx, x * u * t, x * v * t, y * u * t, y * v * t)


def _mehler_g_lhs(p, ctx):
    # g_n g_n q^{n(n-1)/2} = ghat ghat q^{-n/2}
    x, y, u, v, t = sc(ctx, p, "x y u v t")
    q = ctx.q
    s = t / ctx.sqrt(q)
    return series(
        lambda n: (-1) ** n * _ghat(n, x, y, ctx) * _ghat(n, u, v, ctx) * s ** n / fin(ctx, n, q),
        ctx,
    )


def _mehler_g_rhs(p, ctx):
    x, y, u, v, t = sc(ctx, p, "x y u v t")
    return inf(ctx, x * u * t, x * v * t, y * u * t, y * v * t) / inf(ctx, x * y * u * v * t * t / ctx.q)


def _shift_lhs(p, ctx):
    a, b, t = sc(ctx, p, "a b t")
    k = p["k"]
    return series(lambda n: h(n + k, a, b, ctx) * t ** n / fin(ctx, n, ctx.q), ctx)


def _shift_rhs(p, ctx):
    a, b, t = sc(ctx, p, "a b t")
    k = p["k"]
    row = qbinomial_row(k, ctx)
    inner = sum(row[j] * b ** j * a ** (k - j) * qpoch_finite(a * t, ctx, j) for j in range(k + 1))
    return inner / inf(ctx, a * t, b * t)


def _carlitz_mehler_lhs(p, ctx):
    a, b, u, v, t = sc(ctx, p, "a b u v t")
    k = p["k"]
    return series(lambda n: h(n + k, a, b, ctx) * h(n, u, v, ctx) * t ** n / fin(ctx, n, ctx.q), ctx)


def _carlitz_mehler_rhs(p, ctx):
    a, b, u, v, t = sc(ctx, p, "a b u v t")
    lead = inf(ctx, a * b * u * v * t * t) / inf(ctx, a * u * t, b * u * t, a * v * t, b * v * t)
    return lead * carlitz_hk(a, b, u * t, v * t, p["k"], ctx)


def _qbin_lhs(p, ctx):
    a, z = sc(ctx, p, "a z")
    return hyper(ctx, [a], [], z)


def _qbin_rhs(p, ctx):
    a, z = sc(ctx, p, "a z")
    return inf(ctx, a * z) / inf(ctx, z)


def _xt(p):
    return [p["x"] * p["t"], p["y"] * p["t"]]


CHECKS = [
    IdentityCheck(
        id="gen-h",
        paper_ref="generating function of h_n: sum h_n t^n/(q)_n = 1/(xt, yt)_inf",
        mode="numeric",
        group="nonterminating",
        lhs=_gen_h_lhs,
        rhs=_gen_h_rhs,
        sampler=Sampler(
            {"x": C(0.05, 1.5), "y": C(0.05, 1.5), "t": C(0.05, 1.2)},
            (lambda p: max(abs(v) for v in _xt(p)) <= 0.8 * G,),
        ),
    ),
    IdentityCheck(
        id="gen-g",
        paper_ref="generating function of g_n: sum (-1)^n q^(n(n-1)/2) g_n t^n/(q)_n = (xt, yt)_inf",
        mode="numeric",
        group="nonterminating",
        lhs=_gen_g_lhs,
        rhs=_gen_g_rhs,
        sampler=Sampler({"x": C(0.05, 2.0), "y": C(0.05, 2.0), "t": C(0.05, 2.0)}),
    ),
    IdentityCheck(
        id="mehler-h",
        paper_ref="q-Mehler formula for h_n, valid for max(|xut|, |xvt|, |yut|, |yvt|) < 1",
        mode="numeric",
        group="nonterminating",
        lhs=_mehler_h_lhs,
        rhs=_mehler_h_rhs,
        sampler=Sampler(
            {k: C(0.05, 1.2) for k in "xyuvt"},
            (bounded(0.7 * G, *(lambda p, a=a, b=b: p[a] * p[b] * p["t"] for a in "xy" for b in "uv")),),
        ),
    ),
    IdentityCheck(
        id="mehler-g",
        paper_ref="q-Mehler formula for g_n, valid for |xyuvt^2/q| < 1",
        mode="numeric",
        group="nonterminating",
        lhs=_mehler_g_lhs,
        rhs=_mehler_g_rhs,
        sampler=Sampler(
            {k: C(0.05, 1.2) for k in "xyuvt"},
            (bounded(0.5 * G, lambda p: p["x"] * p["y"] * p["u"] * p["v"] * p["t"] ** 2 / p["q"]),),
        ),
    ),
    IdentityCheck(
        id="carlitz-shift-gf",
        paper_ref="k-th q-derivative of the h_n generating function: sum h_(n+k) t^n/(q)_n",
        mode="numeric",
        group="nonterminating",
        lhs=_shift_lhs,
        rhs=_shift_rhs,
        sampler=Sampler(
            {"a": C(0.05, 1.5), "b": C(0.05, 1.5), "t": C(0.05, 1.2), "k": I(0, 5)},
            (bounded(0.8 * G, lambda p: p["a"] * p["t"], lambda p: p["b"] * p["t"]),),
        ),
    ),
    IdentityCheck(
        id="carlitz-mehler",
        paper_ref="Carlitz extension of the q-Mehler formula with the kernel H_k",
        mode="numeric",
        group="nonterminating",
        lhs=_carlitz_mehler_lhs,
        rhs=_carlitz_mehler_rhs,
        sampler=Sampler(
            {"a": C(0.05, 1.2), "b": C(0.05, 1.2), "u": C(0.05, 1.2), "v": C(0.05, 1.2), "t": C(0.05, 1.2), "k": I(0, 5)},
            (
                bounded(0.7 * G, *(lambda p, a=a, b=b: p[a] * p[b] * p["t"] for a in "ab" for b in "uv")),
                poch_safe(lambda p: p["a"] * p["b"] * p["u"] * p["v"] * p["t"] ** 2, n=6),
            ),
        ),
    ),
    IdentityCheck(
        id="qbinomial-theorem",
        paper_ref="q-binomial theorem: sum (a)_n z^n/(q)_n = (az)_inf/(z)_inf, |z| < 1",
        mode="numeric",
        group="nonterminating",
        lhs=_qbin_lhs,
        rhs=_qbin_rhs,
        sampler=Sampler({"a": C(0.05, 3.0), "z": C(0.05, 0.9 * G)}),
    ),
]
