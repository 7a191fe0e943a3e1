"""Reciprocity formulas of Ramanujan type and the pochhammer flip."""
from __future__ import annotations

from ...qcore import qpoch_finite
from ..model import IdentityCheck
from ..sampling import C, I, Sampler, bounded, poch_safe
from ._kit import fin, inf, sc, series

G = 0.9


def _antisym(ctx, u, v, one_sided):
    """``v S(u, v) - u S(v, u)``."""
    return v * one_sided(u, v) - u * one_sided(v, u)


def _theta_rhs(ctx, u, v):
    q = ctx.q
    return (v - u) * inf(ctx, q, q * v / u, q * u / v)


def _ram_lhs(p, ctx):
    u, v, c = sc(ctx, p, "u v c")
    q = ctx.q

    def one(u, v):
        return series(lambda n: (-1) ** n * q ** (n * (n + 1) / 2) * (v / u) ** n / fin(ctx, n + 1, c * v), ctx)

    return _antisym(ctx, u, v, one)


def _ram_rhs(p, ctx):
    u, v, c = sc(ctx, p, "u v c")
    return _theta_rhs(ctx, u, v) / inf(ctx, c * u, c * v)


def _liu_lhs(p, ctx):
    u, v, b, c, d = sc(ctx, p, "u v b c d")
    q = ctx.q

    def one(u, v):
        return series(
            lambda n: fin(ctx, n, q / (b * u), c * d * u * v) * (b * v) ** n / fin(ctx, n + 1, c * v, d * v),
            ctx,
        )

    return _antisym(ctx, u, v, one)


def _liu_rhs(p, ctx):
    u, v, b, c, d = sc(ctx, p, "u v b c d")
    num = inf(ctx, b * c * u * v, b * d * u * v, c * d * u * v)
    den = inf(ctx, b * u, b * v, c * u, c * v, d * u, d * v)
    return _theta_rhs(ctx, u, v) * num / den


def _kang_lhs(p, ctx):
    u, v, b, c, d = sc(ctx, p, "u v b c d")
    q = ctx.q

    def one(u, v):
        return series(
            lambda n: (1 - q ** (2 * n + 1) * v / u)
            * fin(ctx, n, q / (b * u), q / (c * u), q / (d * u))
            / fin(ctx, n + 1, b * v, c * v, d * v)
            * q ** (n * (n - 1) / 2)
            * (-b * c * d * u * v * v) ** n,
            ctx,
        )

    return _antisym(ctx, u, v, one)


def _cz_lhs(p, ctx):
    u, v, a, b, c, d = sc(ctx, p, "u v a b c d")
    q = ctx.q
    z = a * b * c * d * u * u * v * v / q

    def one(u, v):
        return series(
            lambda n: (1 - q ** (2 * n + 1) * v / u)
            * fin(ctx, n, q / (a * u), q / (b * u), q / (c * u), q / (d * u))
            / fin(ctx, n + 1, a * v, b * v, c * v, d * v)
            * z ** n,
            ctx,
        )

    return _antisym(ctx, u, v, one)


def _cz_rhs(p, ctx):
    u, v, a, b, c, d = sc(ctx, p, "u v a b c d")
    q = ctx.q
    uv = u * v
    num = inf(ctx, a * b * uv, a * c * uv, a * d * uv, b * c * uv, b * d * uv, c * d * uv)
    den = inf(ctx, a * u, a * v, b * u, b * v, c * u, c * v, d * u, d * v, a * b * c * d * uv * uv / q)
    return _theta_rhs(ctx, u, v) * num / den


def _flip_lhs(p, ctx):
    (z,) = sc(ctx, p, "z")
    n = p["n"]
    return z ** n * qpoch_finite(ctx.q / z, ctx, n)


def _flip_rhs(p, ctx):
    (z,) = sc(ctx, p, "z")
    q, n = ctx.q, p["n"]
    return (-1) ** (n % 2) * q ** (n * (n + 1) / 2) * inf(ctx, z * q ** (-n)) / inf(ctx, z)


def _uv_ok(p):
    # u/v must avoid integer powers of q, where the theta factor vanishes
    r = p["u"] / p["v"]
    q = p["q"]
    return all(abs(1 - r * q ** k) >= 1e-3 and abs(1 - q ** k / r) >= 1e-3 for k in range(1, 60))


def _poles(names):
    exprs = [lambda p, a=a, w=w: p[a] * p[w] for a in names for w in "uv"]
    return poch_safe(*exprs)


def _terms_ok(names):
    # numerator factors (q/(x u))_n may not vanish on the way
    def ok(p):
        q = p["q"]
        for a in names:
            for w in "uv":
                base = q / (p[a] * p[w])
                if any(abs(1 - base * q ** k) < 1e-6 for k in range(80)):
                    return False
        return True

    return ok


CHECKS = [
    IdentityCheck(
        id="ramanujan-reciprocity",
        paper_ref="Ramanujan's reciprocity theorem (the b = d = 0 case of the three-parameter reciprocity)",
        mode="numeric",
        group="nonterminating",
        lhs=_ram_lhs,
        rhs=_ram_rhs,
        sampler=Sampler({"u": C(0.2, 1.5), "v": C(0.2, 1.5), "c": C(0.05, 1.5)}, (_uv_ok, _poles("c"))),
    ),
    IdentityCheck(
        id="liu-reciprocity",
        paper_ref="three-parameter reciprocity formula, max(|bu|, |bv|) < 1",
        mode="numeric",
        group="nonterminating",
        lhs=_liu_lhs,
        rhs=_liu_rhs,
        sampler=Sampler(
            {"u": C(0.2, 1.5), "v": C(0.2, 1.5), "b": C(0.05, 1.5), "c": C(0.05, 1.5), "d": C(0.05, 1.5)},
            (
                bounded(0.8 * G, lambda p: p["b"] * p["u"], lambda p: p["b"] * p["v"]),
                _uv_ok,
                _poles("bcd"),
                _terms_ok("b"),
            ),
        ),
    ),
    IdentityCheck(
        id="kang-reciprocity",
        paper_ref="Kang's equivalent form of the three-parameter reciprocity formula",
        mode="numeric",
        group="nonterminating",
        lhs=_kang_lhs,
        rhs=_liu_rhs,
        sampler=Sampler(
            {"u": C(0.2, 1.5), "v": C(0.2, 1.5), "b": C(0.05, 1.5), "c": C(0.05, 1.5), "d": C(0.05, 1.5)},
            (_uv_ok, _poles("bcd"), _terms_ok("bcd")),
        ),
        dps=30,
    ),
    IdentityCheck(
        id="chu-zhang-reciprocity",
        paper_ref="Chu-Zhang four-parameter reciprocity formula, |abcd u^2 v^2/q| < 1",
        mode="numeric",
        group="nonterminating",
        lhs=_cz_lhs,
        rhs=_cz_rhs,
        sampler=Sampler(
            {"u": C(0.2, 1.5), "v": C(0.2, 1.5), "a": C(0.05, 1.5), "b": C(0.05, 1.5), "c": C(0.05, 1.5), "d": C(0.05, 1.5)},
            (
                bounded(0.7 * G, lambda p: p["a"] * p["b"] * p["c"] * p["d"] * (p["u"] * p["v"]) ** 2 / p["q"]),
                _uv_ok,
                _poles("abcd"),
                _terms_ok("abcd"),
            ),
        ),
        dps=30,
    ),
    IdentityCheck(
        id="poch-flip",
        paper_ref="z^n (q/z)_n = (-1)^n q^(n(n+1)/2) (z q^-n)_inf/(z)_inf for every integer n",
        mode="numeric",
        group="nonterminating",
        lhs=_flip_lhs,
        rhs=_flip_rhs,
        sampler=Sampler(
            {"z": C(0.05, 3.0), "n": I(-8, 8)},
            (poch_safe(lambda p: p["z"] * p["q"] ** -12), poch_safe(lambda p: p["q"] / p["z"] * p["q"] ** -12, n=30)),
        ),
    ),
]
