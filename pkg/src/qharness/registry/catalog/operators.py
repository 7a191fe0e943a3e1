"""q-exponential operator identities and the summations derived from them."""
from __future__ import annotations

import cmath
import math

from ...qcalculus import MaclaurinSeries, qexp_T
from ...qhyper import LauricellaSpec, lauricella_cap, lauricella_sum
from ...qpoly import h
from ..model import IdentityCheck
from ..sampling import THETA, C, I, Sampler, bounded, poch_safe
from ._kit import cancel_dps, fin, hyper, inf, inverse_operator_pointwise, operator_on_products, sc, series

G = 0.9

# tail allowed for the truncated multiple sums
MULTI_TAIL = 1e-15


def _prod(*names):
    def e(p):
        out = 1
        for n in names:
            out *= p[n]
        return out

    return e


def _pairs(xs, ys):
    return [_prod(x, y) for x in xs for y in ys]


# -- the two basic operator identities -----------------------------------------

def _cliupp1_lhs(p, ctx):
    x, y, s, t = sc(ctx, p, "x y s t")
    return operator_on_products(ctx, [], [s, t], x, y)


def _cliupp1_rhs(p, ctx):
    x, y, s, t = sc(ctx, p, "x y s t")
    return inf(ctx, x * y * s * t) / inf(ctx, x * s, x * t, y * s, y * t)


def _cliupp2_lhs(p, ctx):
    x, y, s, t = sc(ctx, p, "x y s t")
    return operator_on_products(ctx, [s, t], [], x, y, inverse_q=True)


def _cliupp2_rhs(p, ctx):
    x, y, s, t = sc(ctx, p, "x y s t")
    return inf(ctx, x * s, x * t, y * s, y * t) / inf(ctx, x * y * s * t / ctx.q)


# -- operator identities with a 3phi2 --------------------------------------------

def _op3_lhs(p, ctx):
    s, t, u, v, a, b = sc(ctx, p, "s t u v a b")
    return operator_on_products(ctx, [v], [s, t, u], a, b)


def _op3_rhs(p, ctx):
    s, t, u, v, a, b = sc(ctx, p, "s t u v a b")
    z = a * b * s * t * u / v
    lead = inf(ctx, a * v, b * v, z) / inf(ctx, a * s, a * t, a * u, b * s, b * t, b * u)
    return lead * hyper(ctx, [v / s, v / t, v / u], [a * v, b * v], z)


def _op3inv_lhs(p, ctx):
    s, t, u, v, a, b = sc(ctx, p, "s t u v a b")

    def f(x):
        return inf(ctx, x * s, x * t, x * u) / inf(ctx, x * v)

    return inverse_operator_pointwise(ctx, f, a, b)


def _op3inv_rhs(p, ctx):
    s, t, u, v, a, b = sc(ctx, p, "s t u v a b")
    q = ctx.q
    lead = inf(ctx, a * s, a * t, a * u, b * s, b * t, b * u) / inf(ctx, a * v, b * v, a * b * s * t * u / (q * v))
    return lead * hyper(ctx, [s / v, t / v, u / v], [q / (a * v), q / (b * v)], q)


# -- x^n under the operators ----------------------------------------------------

def _gauss_rows(n, q):
    """Gaussian binomials ``[n k]`` by the q-Pascal rule."""
    row = [1]
    for m in range(1, n + 1):
        row = [1] + [row[k - 1] + q ** k * row[k] for k in range(1, m)] + [1]
    return row


def _rep_lhs(inverse):
    def lhs(p, ctx):
        (y,) = sc(ctx, p, "y")
        return list(qexp_T(y, MaclaurinSeries.monomial(p["n"]), ctx, inverse_q=inverse).coeffs)

    return lhs


def _rep_rhs(inverse):
    # coefficient of x^k in h_n(x, y) (or g_n(x, y))
    def rhs(p, ctx):
        (y,) = sc(ctx, p, "y")
        n, q = p["n"], ctx.q
        row = _gauss_rows(n, q)
        return [row[k] * (q ** (k * (k - n)) if inverse else 1) * y ** (n - k) for k in range(n + 1)]

    return rhs


# -- summations and transformations from the operator method --------------------

def _qgauss_lhs(p, ctx):
    a, b, x, y = sc(ctx, p, "a b x y")
    q = ctx.q
    return series(
        lambda n: fin(ctx, n, a, b) * x ** n / fin(ctx, n, q, a * b * x * y)
        * hyper(ctx, [q ** -n, 1 / x, 1 / y], [a, b], a * b * x * y * q ** n),
        ctx,
    )


def _qgauss_rhs(p, ctx):
    a, b, x, y = sc(ctx, p, "a b x y")
    return inf(ctx, a * x, b * x) / inf(ctx, x, a * b * x * y)


def _qeuler_lhs(p, ctx):
    a, b, c, x, y = sc(ctx, p, "a b c x y")
    return inf(ctx, b) / inf(ctx, x) * hyper(ctx, [a * x, c * x], [a * c * x * y], b)


def _qeuler_rhs(p, ctx):
    a, b, c, x, y = sc(ctx, p, "a b c x y")
    q = ctx.q
    # the argument is acxy q^n; the displayed abxy q^n does not hold
    return series(
        lambda n: fin(ctx, n, a * b, b * c) * x ** n / fin(ctx, n, q, a * c * x * y)
        * hyper(ctx, [q ** -n, b / x, b / y], [a * b, b * c], a * c * x * y * q ** n),
        ctx,
    )


def _sears_lhs(p, ctx):
    a1, a2, a3, b1, b2 = sc(ctx, p, "a1 a2 a3 b1 b2")
    q, n = ctx.q, p["n"]
    nonterm = hyper(ctx, [a1, a2, a3], [b1, b2], b1 * b2 / (a1 * a2 * a3))
    term = hyper(ctx, [q ** -n, a1, a2], [b1, b2], q)
    return [nonterm, term]


def _sears_rhs(p, ctx):
    a1, a2, a3, b1, b2 = sc(ctx, p, "a1 a2 a3 b1 b2")
    q, n = ctx.q, p["n"]
    w = b1 * b2 / (a1 * a2)
    # (b2/a3) in the leading product; the display prints b2/b3
    nonterm = (
        inf(ctx, b2 / a3, w) / inf(ctx, b2, w / a3)
        * hyper(ctx, [b1 / a1, b1 / a2, a3], [b1, w], b2 / a3)
    )
    term = fin(ctx, n, w) / fin(ctx, n, b2) * (a1 * a2 / b1) ** n * hyper(ctx, [q ** -n, b1 / a1, b1 / a2], [b1, w], q)
    return [nonterm, term]


def _es_side(ctx, b, c, a, d, u, v, n, th):
    q = ctx.q
    e = cmath.exp(1j * th)
    top = a * b * c * d * u * q ** (n - 1) / v
    total = ctx.scalar(0)
    for j in range(n + 1):
        total += (
            fin(ctx, j, q ** -n, b * e, b / e, top) * q ** j / fin(ctx, j, q, a * b, b * c, b * d)
            * hyper(ctx, [b * q ** j / v, c * q ** n / v, u / v], [q / (a * v), q / (d * v)], q)
        )
    return total


def _es_lhs(p, ctx):
    a, b, c, d, u, v = sc(ctx, p, "a b c d u v")
    n, th = p["n"], p["theta"]
    return [_es_side(ctx, b, c, a, d, u, v, n, th), _es_side(ctx, b, c, a, d, v, v, n, th)]


def _sears_4phi3(ctx, n, A, B, Cc, D, E, F):
    """Sears' transformation of a balanced terminating 4phi3, right-hand side."""
    q = ctx.q
    lead = fin(ctx, n, E / A, F / A) / fin(ctx, n, E, F) * A ** n
    return lead * hyper(ctx, [q ** -n, A, D / B, D / Cc], [D, A * q ** (1 - n) / E, A * q ** (1 - n) / F], q)


def _es_rhs(p, ctx):
    a, b, c, d, u, v = sc(ctx, p, "a b c d u v")
    n, th = p["n"], p["theta"]
    q = ctx.q
    e = cmath.exp(1j * th)
    main = fin(ctx, n, a * c, c * d) / fin(ctx, n, a * b, b * d) * (b / c) ** n * _es_side(ctx, c, b, a, d, u, v, n, th)
    # at u = v the inner 3phi2 is 1 and the left side is a balanced 4phi3
    reduced = _sears_4phi3(ctx, n, b * e, b / e, a * b * c * d * q ** (n - 1), a * b, b * c, b * d)
    return [main, reduced]


# -- multilinear generating function and the q-Lauricella sum ---------------------

def _terms_needed(r):
    return min(4000, int(math.ceil(math.log(1e-19) / math.log(r))) + 20)


def _weighted(ctx, conv, a, c):
    """``sum_s (a)_s/(c)_s conv[s]``."""
    q = ctx.q
    total = ctx.scalar(0)
    w = ctx.scalar(1)
    for s, e in enumerate(conv):
        total += w * e
        w *= (1 - a * q ** s) / (1 - c * q ** s)
    return total


def _convolve(rows):
    out = rows[0]
    for r in rows[1:]:
        n = min(len(out), len(r))
        out = [sum(out[i] * r[s - i] for i in range(s + 1)) for s in range(n)]
    return out


def _multi_lhs(k):
    def lhs(p, ctx):
        a, c = sc(ctx, p, "a c")
        q = ctx.q
        pairs = [sc(ctx, p, f"x{i} y{i}") for i in range(1, k + 1)]
        N = _terms_needed(max(abs(complex(v)) for pr in pairs for v in pr))
        rows = []
        for x, y in pairs:
            qq = ctx.scalar(1)
            row = []
            for n in range(N + 1):
                row.append(h(n, x, y, ctx) / qq)
                qq *= 1 - q ** (n + 1)
            rows.append(row)
        return _weighted(ctx, _convolve(rows), a, c)

    return lhs


def _multi_rhs(k):
    def rhs(p, ctx):
        a, c = sc(ctx, p, "a c")
        vs = [v for i in range(1, k + 1) for v in sc(ctx, p, f"x{i} y{i}")]
        return inf(ctx, a) / inf(ctx, c, *vs) * hyper(ctx, [c / a, *vs], [0] * (2 * k), a)

    return rhs


def _laur_lhs(k):
    def lhs(p, ctx):
        a, c = sc(ctx, p, "a c")
        xs = [ctx.scalar(p[f"x{i}"]) for i in range(1, k + 1)]
        bs = [ctx.scalar(p[f"b{i}"]) for i in range(1, k + 1)]
        spec = LauricellaSpec(a, c, tuple(xs), tuple(bs), ctx)
        return lauricella_sum(spec, lauricella_cap(spec, MULTI_TAIL))

    return lhs


def _laur_rhs(k):
    def rhs(p, ctx):
        a, c = sc(ctx, p, "a c")
        xs = [ctx.scalar(p[f"x{i}"]) for i in range(1, k + 1)]
        bx = [ctx.scalar(p[f"b{i}"]) * x for i, x in enumerate(xs, 1)]
        # lower parameters b_i x_i; the display drops the index on b
        return inf(ctx, a, *bx) / inf(ctx, c, *xs) * hyper(ctx, [c / a, *xs], bx, a)

    return rhs


# -- samplers ---------------------------------------------------------------------

_OP3_BOXES = {"s": C(0.05, 1.2), "t": C(0.05, 1.2), "u": C(0.05, 1.2), "v": C(0.05, 1.2), "a": C(0.05, 1.2), "b": C(0.05, 1.2)}


def _multi_sampler(k):
    boxes = {"a": C(0.05, 0.9 * G), "c": C(0.05, 0.9 * G)}
    for i in range(1, k + 1):
        boxes[f"x{i}"] = C(0.05, 0.8 * G)
        boxes[f"y{i}"] = C(0.05, 0.8 * G)
    return Sampler(boxes, (poch_safe(lambda p: p["c"]),))


def _laur_sampler(k):
    boxes = {"a": C(0.05, 0.9 * G), "c": C(0.05, 0.9 * G)}
    for i in range(1, k + 1):
        boxes[f"x{i}"] = C(0.05, 0.7 * G)
        boxes[f"b{i}"] = C(0.05, 1.5)
    lowers = [lambda p, i=i: p[f"b{i}"] * p[f"x{i}"] for i in range(1, k + 1)]
    return Sampler(boxes, (poch_safe(lambda p: p["c"], *lowers),))


def _sears_dps(p):
    return cancel_dps(p["q"], p["n"])


def _es_dps(p):
    return cancel_dps(p["q"], p["n"]) + 10


CHECKS = [
    IdentityCheck(
        id="op-cliupp-i",
        paper_ref="T(yD_q){1/(xs, xt)_inf} = (xyst)_inf/(xs, xt, ys, yt)_inf, max(|xs|, |xt|, |ys|, |yt|) < 1",
        mode="numeric",
        group="operator",
        lhs=_cliupp1_lhs,
        rhs=_cliupp1_rhs,
        sampler=Sampler(
            {k: C(0.05, 1.2) for k in "xyst"},
            (bounded(0.8 * G, *_pairs("xy", "st")), poch_safe(*_pairs("xy", "st"))),
        ),
    ),
    IdentityCheck(
        id="op-cliupp-ii",
        paper_ref="T(yD_{1/q}){(xs, xt)_inf} = (xs, xt, ys, yt)_inf/(xyst/q)_inf, |xyst/q| < 1",
        mode="numeric",
        group="operator",
        lhs=_cliupp2_lhs,
        rhs=_cliupp2_rhs,
        sampler=Sampler(
            {k: C(0.05, 1.0) for k in "xyst"},
            (bounded(0.9 * G, lambda p: p["x"] * p["y"] * p["s"] * p["t"] / p["q"]), poch_safe(lambda p: p["x"] * p["y"] * p["s"] * p["t"] / p["q"])),
        ),
        dps=30,
    ),
    IdentityCheck(
        id="op-3phi2",
        paper_ref="T(bD_q){(av)_inf/(as, at, au)_inf} as a 3phi2 in abstu/v",
        mode="numeric",
        group="operator",
        lhs=_op3_lhs,
        rhs=_op3_rhs,
        sampler=Sampler(
            _OP3_BOXES,
            (
                bounded(0.8 * G, *_pairs("ab", "stu"), lambda p: p["a"] * p["b"] * p["s"] * p["t"] * p["u"] / p["v"]),
                poch_safe(*_pairs("ab", "stu"), *_pairs("ab", "v")),
            ),
        ),
    ),
    IdentityCheck(
        id="op-3phi2-inv",
        paper_ref="T(bD_{1/q}){(as, at, au)_inf/(av)_inf} as a 3phi2 at argument q, max(|av|, |bv|, |abstu/qv|) < 1",
        mode="numeric",
        group="operator",
        lhs=_op3inv_lhs,
        rhs=_op3inv_rhs,
        sampler=Sampler(
            _OP3_BOXES,
            (
                bounded(0.9 * G, *_pairs("ab", "v"), lambda p: p["a"] * p["b"] * p["s"] * p["t"] * p["u"] / (p["q"] * p["v"])),
                poch_safe(*(lambda p, w=w: p["q"] / (p[w] * p["v"]) for w in "ab")),
                poch_safe(*_pairs("ab", "v")),
            ),
        ),
        dps=60,
    ),
    IdentityCheck(
        id="op-hn-rep",
        paper_ref="T(yD_q){x^n} = h_n(x, y|q), compared coefficientwise in x",
        mode="numeric",
        group="operator",
        lhs=_rep_lhs(False),
        rhs=_rep_rhs(False),
        sampler=Sampler({"y": C(0.05, 1.5), "n": I(0, 15)}),
        tol=1e-12,
    ),
    IdentityCheck(
        id="op-gn-rep",
        paper_ref="T(yD_{1/q}){x^n} = g_n(x, y|q), compared coefficientwise in x",
        mode="numeric",
        group="operator",
        lhs=_rep_lhs(True),
        rhs=_rep_rhs(True),
        sampler=Sampler({"y": C(0.05, 1.5), "n": I(0, 15)}),
        tol=1e-12,
    ),
    IdentityCheck(
        id="ext-q-gauss",
        paper_ref="extension of the q-Gauss summation by a terminating 3phi2 in abxy q^n, max(|x|, |abxy|) < 1",
        mode="numeric",
        group="nonterminating",
        lhs=_qgauss_lhs,
        rhs=_qgauss_rhs,
        sampler=Sampler(
            {"a": C(0.05, 1.5), "b": C(0.05, 1.5), "x": C(0.05, 0.8 * G), "y": C(0.05, 1.5)},
            (bounded(0.8 * G, _prod("a", "b", "x", "y")), poch_safe(lambda p: p["a"], lambda p: p["b"], _prod("a", "b", "x", "y"))),
        ),
    ),
    IdentityCheck(
        id="ext-q-euler",
        paper_ref="extension of Jackson's q-analogue of the Euler transformation, max(|b|, |x|, |abxy|) < 1",
        mode="numeric",
        group="nonterminating",
        lhs=_qeuler_lhs,
        rhs=_qeuler_rhs,
        sampler=Sampler(
            {"a": C(0.05, 1.5), "b": C(0.05, 0.9 * G), "c": C(0.05, 1.5), "x": C(0.05, 0.8 * G), "y": C(0.05, 1.5)},
            (
                bounded(0.8 * G, _prod("a", "b", "x", "y"), _prod("a", "c", "x", "y")),
                poch_safe(_prod("a", "b"), _prod("b", "c"), _prod("a", "c", "x", "y")),
            ),
        ),
    ),
    IdentityCheck(
        id="ext-sears-4phi3",
        paper_ref="extension of the Sears 4phi3 transformation with inner 3phi2 at argument q; at u = v it is Sears' 4phi3",
        mode="numeric",
        group="nonterminating",
        lhs=_es_lhs,
        rhs=_es_rhs,
        sampler=Sampler(
            {**{k: C(0.1, 0.9) for k in "abcdu"}, "v": C(0.3, 1.2), "n": I(0, 8), "theta": THETA},
            (
                poch_safe(*(lambda p, w=w: p["q"] / (p[w] * p["v"]) for w in "ad")),
                poch_safe(_prod("a", "b"), _prod("b", "c"), _prod("b", "d"), _prod("a", "c"), _prod("c", "d"), n=9),
                poch_safe(
                    lambda p: p["b"] * p["q"] ** (1 - p["n"]) * cmath.exp(1j * p["theta"]) / (p["b"] * p["c"]),
                    lambda p: p["b"] * p["q"] ** (1 - p["n"]) * cmath.exp(1j * p["theta"]) / (p["b"] * p["d"]),
                    n=9,
                ),
            ),
        ),
        dps=_es_dps,
    ),
    IdentityCheck(
        id="sears-3phi2",
        paper_ref="Sears' 3phi2 transformation, nonterminating and with a3 = q^-n",
        mode="numeric",
        group="nonterminating",
        lhs=_sears_lhs,
        rhs=_sears_rhs,
        sampler=Sampler(
            {"a1": C(0.3, 2.5), "a2": C(0.3, 2.5), "a3": C(0.3, 2.5), "b1": C(0.05, 1.5), "b2": C(0.05, 1.5), "n": I(0, 8)},
            (
                bounded(0.8 * G, lambda p: p["b1"] * p["b2"] / (p["a1"] * p["a2"] * p["a3"]), lambda p: p["b2"] / p["a3"]),
                poch_safe(lambda p: p["b1"], lambda p: p["b2"], lambda p: p["b1"] * p["b2"] / (p["a1"] * p["a2"])),
            ),
        ),
        dps=_sears_dps,
    ),
    IdentityCheck(
        id="multilinear-gf-k1",
        paper_ref="multilinear generating function for the Rogers-Szego polynomials, k = 1",
        mode="numeric",
        group="nonterminating",
        lhs=_multi_lhs(1),
        rhs=_multi_rhs(1),
        sampler=_multi_sampler(1),
    ),
    IdentityCheck(
        id="multilinear-gf-k2",
        paper_ref="multilinear generating function for the Rogers-Szego polynomials, k = 2",
        mode="numeric",
        group="nonterminating",
        lhs=_multi_lhs(2),
        rhs=_multi_rhs(2),
        sampler=_multi_sampler(2),
    ),
    IdentityCheck(
        id="andrews-lauricella-k1",
        paper_ref="Andrews' formula for the q-Lauricella function as a (k+1)phi(k), k = 1",
        mode="numeric",
        group="nonterminating",
        lhs=_laur_lhs(1),
        rhs=_laur_rhs(1),
        sampler=_laur_sampler(1),
    ),
    IdentityCheck(
        id="andrews-lauricella-k2",
        paper_ref="Andrews' formula for the q-Lauricella function as a (k+1)phi(k), k = 2",
        mode="numeric",
        group="nonterminating",
        lhs=_laur_lhs(2),
        rhs=_laur_rhs(2),
        sampler=_laur_sampler(2),
    ),
]
