"""Jackson integral evaluations of Andrews-Askey type."""
from __future__ import annotations

import math

from ...qcalculus import jackson_qintegral_with_tail
from ...qpoly import carlitz_hk
from ..model import IdentityCheck
from ..sampling import C, Sampler, bounded, poch_safe
from ._kit import ProductIntegrand, fin, hyper, inf, operator_on_products, sc, series

G = 0.9

# the discarded tail of every Jackson sum must be certified below this
TAIL_CERT = 1e-15


def _integral(f, lo, hi, ctx):
    value, tail = jackson_qintegral_with_tail(f, lo, hi, ctx)
    if tail > TAIL_CERT * (1 + abs(complex(value))):
        raise ArithmeticError(f"Jackson tail bound {tail:.3g} exceeds {TAIL_CERT}")
    return value


def _endpoint_product(ctx, u, v):
    q = ctx.q
    return inf(ctx, q, u / v, q * v / u)


def _aa_lhs(p, ctx):
    u, v, a, b = sc(ctx, p, "u v a b")
    q = ctx.q
    return _integral(ProductIntegrand(ctx, [q / u, q / v], [a, b]), u, v, ctx)


def _aa_rhs(p, ctx):
    u, v, a, b = sc(ctx, p, "u v a b")
    return (
        (1 - ctx.q) * v * _endpoint_product(ctx, u, v) * inf(ctx, a * b * u * v)
        / inf(ctx, a * u, b * u, a * v, b * v)
    )


def _aax_lhs(p, ctx):
    u, v, a, b, c, d = sc(ctx, p, "u v a b c d")
    q = ctx.q
    return _integral(ProductIntegrand(ctx, [q / u, q / v], [a, b, c, d]), u, v, ctx)


def _aax_rhs(p, ctx):
    u, v, a, b, c, d = sc(ctx, p, "u v a b c d")
    q = ctx.q
    lead = (
        (1 - q) * v * _endpoint_product(ctx, u, v) * inf(ctx, a * b * u * v, c * d * u * v)
        / inf(ctx, a * u, b * u, c * u, d * u, a * v, b * v, c * v, d * v)
    )
    s = series(
        lambda k: q ** (k * (k - 1) / 2) * (-u * v) ** k / fin(ctx, k, q)
        * carlitz_hk(a, b, u, v, k, ctx) * carlitz_hk(c, d, u, v, k, ctx),
        ctx,
    )
    return lead * s


def _sav_lhs(p, ctx):
    u, v, a, b, c = sc(ctx, p, "u v a b c")
    q = ctx.q
    return _integral(ProductIntegrand(ctx, [q / u, q / v, a * b * c * u * v], [a, b, c]), u, v, ctx)


def _sav_rhs(p, ctx):
    u, v, a, b, c = sc(ctx, p, "u v a b c")
    uv = u * v
    return (
        (1 - ctx.q) * v * _endpoint_product(ctx, u, v) * inf(ctx, a * b * uv, a * c * uv, b * c * uv)
        / inf(ctx, a * u, b * u, c * u, a * v, b * v, c * v)
    )


def _stu_integral(p, ctx):
    s, t, u, a, b, c = sc(ctx, p, "s t u a b c")
    q = ctx.q
    return _integral(ProductIntegrand(ctx, [q / s, q / t, a * b * u], [a, b, c]), s, t, ctx)


def _opint_lhs(p, ctx):
    s, t, u, a, b, c = sc(ctx, p, "s t u a b c")
    return operator_on_products(ctx, [c * s * t], [s, t, u], a, b)


def _fprod(q, *xs):
    out = 1.0
    for x in xs:
        k = 0
        while abs(x) * q ** k > 1e-18:
            out *= abs(1 - x * q ** k)
            k += 1
    return out


def _opint_dps(p):
    """Doubles unless the prefactor amplifies the q-integral by more than 1e5.

    The lost digits then come back as extra working precision.
    """
    q, s, t, u, a, b, c = (p[k] for k in "qstuabc")
    gain = _fprod(q, c * s, c * t) / (abs((1 - q) * t) * _fprod(q, q, s / t, q * t / s, a * u, b * u))
    digits = math.log10(max(gain, 1.0))
    return None if digits < 5 else 20 + int(digits)


def _opint_rhs(p, ctx):
    s, t, u, a, b, c = sc(ctx, p, "s t u a b c")
    q = ctx.q
    lead = inf(ctx, c * s, c * t) / ((1 - q) * t * inf(ctx, q, s / t, q * t / s, a * u, b * u))
    return lead * _stu_integral(p, ctx)


def _i3_rhs(p, ctx):
    s, t, u, a, b, c = sc(ctx, p, "s t u a b c")
    q = ctx.q
    lead = (
        (1 - q) * t * inf(ctx, q, s / t, q * t / s, a * c * s * t, b * c * s * t, a * b * u / c)
        / inf(ctx, a * s, b * s, c * s, a * t, b * t, c * t)
    )
    return lead * hyper(ctx, [c * s, c * t, c * s * t / u], [a * c * s * t, b * c * s * t], a * b * u / c)


# relative distance kept between the endpoint ratio and any power of q
RATIO_MARGIN = 0.05


def _ratio_ok(x, y):
    # near x/y = q^k the endpoint product vanishes and the integral is tiny
    # next to its node values, so it would lose most of its digits
    def ok(p):
        r, q = p[x] / p[y], p["q"]
        return all(abs(1 - r * q ** k) >= RATIO_MARGIN and abs(1 - q ** k / r) >= RATIO_MARGIN for k in range(1, 60))

    return ok


def _products(ends, names):
    return [lambda p, e=e, n=n: p[e] * p[n] for e in ends for n in names]


CHECKS = [
    IdentityCheck(
        id="andrews-askey",
        paper_ref="Andrews-Askey q-integral, no zero factors in the denominator",
        mode="numeric",
        group="integral",
        lhs=_aa_lhs,
        rhs=_aa_rhs,
        sampler=Sampler(
            {"u": C(0.1, 1.5), "v": C(0.1, 1.5), "a": C(0.05, 1.5), "b": C(0.05, 1.5)},
            (bounded(0.9 * G, *_products("uv", "ab")), _ratio_ok("u", "v"), poch_safe(*_products("uv", "ab"))),
        ),
    ),
    IdentityCheck(
        id="aa-ext",
        paper_ref="extension of the Andrews-Askey integral with four denominator parameters",
        mode="numeric",
        group="integral",
        lhs=_aax_lhs,
        rhs=_aax_rhs,
        sampler=Sampler(
            {"u": C(0.1, 1.5), "v": C(0.1, 1.5), **{k: C(0.05, 1.5) for k in "abcd"}},
            (
                bounded(0.9 * G, *_products("uv", "abcd")),
                _ratio_ok("u", "v"),
                poch_safe(*_products("uv", "abcd")),
                poch_safe(lambda p: p["a"] * p["b"] * p["u"] * p["v"], lambda p: p["c"] * p["d"] * p["u"] * p["v"], n=80),
            ),
        ),
    ),
    IdentityCheck(
        id="sears-av-integral",
        paper_ref="q-integral equivalent to Sears' sum of two nonterminating balanced 3phi2",
        mode="numeric",
        group="integral",
        lhs=_sav_lhs,
        rhs=_sav_rhs,
        sampler=Sampler(
            {"u": C(0.1, 1.5), "v": C(0.1, 1.5), **{k: C(0.05, 1.5) for k in "abc"}},
            (bounded(0.9 * G, *_products("uv", "abc")), _ratio_ok("u", "v"), poch_safe(*_products("uv", "abc"))),
        ),
    ),
    IdentityCheck(
        id="operator-integral",
        paper_ref="q-exponential operator applied to (acst)_inf/(as, at, au)_inf as a q-integral",
        mode="numeric",
        group="integral",
        lhs=_opint_lhs,
        rhs=_opint_rhs,
        # the prefactor multiplies the q-integral back up, so its tail must
        # be small relative to the integral, not merely below 1e-15
        tail_tol=1e-26,
        dps=_opint_dps,

        sampler=Sampler(
            {k: C(0.1, 1.2) for k in "stuabc"},
            (
                lambda p: max(abs(p[k]) for k in "stu") * max(abs(p["a"]), abs(p["b"])) <= 0.6,
                bounded(0.9 * G, *_products("st", "abc"), lambda p: p["a"] * p["u"], lambda p: p["b"] * p["u"]),
                _ratio_ok("s", "t"),
                poch_safe(*_products("st", "abc")),
            ),
        ),
    ),
    IdentityCheck(
        id="integral-3phi2",
        paper_ref="q-integral as a 3phi2, max(|as|, |bs|, |cs|, |at|, |bt|, |ct|, |abu/c|) < 1",
        mode="numeric",
        group="integral",
        lhs=_stu_integral,
        rhs=_i3_rhs,
        sampler=Sampler(
            {k: C(0.1, 1.5) for k in "stuabc"},
            (
                bounded(0.9 * G, *_products("st", "abc"), lambda p: p["a"] * p["b"] * p["u"] / p["c"]),
                _ratio_ok("s", "t"),
                poch_safe(*_products("st", "abc")),
                poch_safe(lambda p: p["a"] * p["c"] * p["s"] * p["t"], lambda p: p["b"] * p["c"] * p["s"] * p["t"]),
            ),
        ),
    ),
]
