"""Rogers, Watson and Liu type summations and transformations."""
from __future__ import annotations

from ...qcore import qpoch_finite
from ..model import IdentityCheck
from ..sampling import C, I, Sampler, bounded, poch_safe
from ._kit import arb_seq, at_dps, cancel_dps, fin, hyper, inf, sc, series, seqs

G = 0.9
TERM_TOL = 1e-10


def _inner(p, n, upper, lower, z, extra=0):
    """A terminating inner series of length ``n + 1`` at adequate precision.

    ``upper``, ``lower`` and ``z`` are functions of a context that rebuild
    the parameters inside it.
    """
    hc = at_dps(p, cancel_dps(p["q"], n) + extra)
    return hyper(hc, upper(hc), lower(hc), z(hc))


# -- Rogers 6phi5 and its extensions -------------------------------------------

def _rogers_A(ctx, al, a, b, c, n):
    q = ctx.q
    return (
        (1 - al * q ** (2 * n))
        * fin(ctx, n, al, q / a, q / b, q / c)
        / fin(ctx, n, q, al * a, al * b, al * c)
        * (al * a * b * c / q ** 2) ** n
    )


def _r6_lhs(p, ctx):
    al, a, b, c = sc(ctx, p, "alpha a b c")
    q = ctx.q
    r = ctx.sqrt(al)
    return hyper(
        ctx,
        [al, q * r, -q * r, q / a, q / b, q / c],
        [r, -r, al * a, al * b, al * c],
        al * a * b * c / q ** 2,
    )


def _r6_rhs(p, ctx):
    al, a, b, c = sc(ctx, p, "alpha a b c")
    q = ctx.q
    return inf(ctx, al * q, al * a * b / q, al * a * c / q, al * b * c / q) / inf(
        ctx, al * a, al * b, al * c, al * a * b * c / q ** 2
    )


def _rext_lhs(p, ctx):
    al, a, b, c = sc(ctx, p, "alpha a b c")

    def term(n):
        def up(h):
            al_, be, ga = sc(h, p, "alpha beta gamma")
            return [h.q ** (-n), al_ * h.q ** n, be, ga]

        def lo(h):
            al_, a_, b_, be, ga = sc(h, p, "alpha a b beta gamma")
            return [h.q / a_, h.q / b_, al_ * be * ga * a_ * b_ / h.q]

        inner = _inner(p, n, up, lo, lambda h: h.q)
        return _rogers_A(ctx, al, a, b, c, n) * ctx.scalar(inner)

    return series(term, ctx)


def _rext_rhs(p, ctx):
    al, a, b, c, be, ga = sc(ctx, p, "alpha a b c beta gamma")
    q = ctx.q
    num = inf(
        ctx,
        al,
        al * a * c / q,
        al * b * c / q,
        al * be * a * b / q,
        al * ga * a * b / q,
        al * be * ga * a * b * c / q ** 2,
    )
    den = inf(
        ctx,
        al * a,
        al * b,
        al * c,
        al * be * a * b * c / q ** 2,
        al * ga * a * b * c / q ** 2,
        al * be * ga * a * b / q,
    )
    return num / den


def _irs_lhs(p, ctx):
    al, a, b, c = sc(ctx, p, "alpha a b c")

    def term(n):
        def up(h):
            al_, be = sc(h, p, "alpha beta")
            return [h.q ** (-n), al_ * h.q ** n, be]

        def lo(h):
            a_, b_ = sc(h, p, "a b")
            return [h.q / a_, h.q / b_]

        inner = _inner(p, n, up, lo, lambda h: h.q)
        return _rogers_A(ctx, al, a, b, c, n) * ctx.scalar(inner)

    return series(term, ctx)


def _irs_rhs(p, ctx):
    al, a, b, c, be = sc(ctx, p, "alpha a b c beta")
    q = ctx.q
    return inf(ctx, al, al * a * c / q, al * b * c / q, al * be * a * b / q) / inf(
        ctx, al * a, al * b, al * c, al * be * a * b * c / q ** 2
    )


def _z0(p):
    return p["alpha"] * p["a"] * p["b"] * p["c"] / p["q"] ** 2


def _rogers_sampler(z0_max, names="alpha a b c", extra_bounds=()):
    boxes = {"alpha": C(0.05, 0.9), "a": C(0.3, 2.0), "b": C(0.3, 2.0), "c": C(0.3, 2.0)}
    for name in names.split()[4:]:
        boxes[name] = C(0.05, 0.9)
    return Sampler(
        boxes,
        (
            bounded(z0_max, _z0),
            *extra_bounds,
            poch_safe(*(lambda p, k=k: p["alpha"] * p[k] for k in "abc")),
            poch_safe(lambda p: p["alpha"]),
        ),
    )


# -- Liu's expansion and lemma ---------------------------------------------------

def _lexp_lhs(p, ctx):
    al, a, b = sc(ctx, p, "alpha a b")
    q = ctx.q
    pre = inf(ctx, al * q, al * a * b / q) / inf(ctx, al * a, al * b)
    coeffs = seqs(ctx, p, "f")
    x = al * a
    return pre * sum(c * x ** j for j, c in enumerate(coeffs))


def _lexp_rhs(p, ctx):
    al, a = sc(ctx, p, "alpha a")
    q = ctx.q

    def term(n):
        w = (
            (1 - al * q ** (2 * n))
            * fin(ctx, n, al, q / a)
            * (a / q) ** n
            / ((1 - al) * fin(ctx, n, q, al * a))
        )
        hc = at_dps(p, cancel_dps(p["q"], n))
        al_h, b_h = sc(hc, p, "alpha b")
        f = seqs(hc, p, "f")
        qh = hc.q
        inner = hc.scalar(0)
        for k in range(n + 1):
            x = al_h * qh ** (k + 1)
            fx = sum(c * x ** j for j, c in enumerate(f))
            inner += fin(hc, k, qh ** (-n), al_h * qh ** n) * qh ** k / fin(hc, k, qh, al_h * b_h) * fx
        return w * ctx.scalar(inner)

    return series(term, ctx)


def _lemma_lhs(p, ctx):
    al, a, b = sc(ctx, p, "alpha a b")
    q = ctx.q
    m = p["m"]
    A = seqs(ctx, p, "A")
    pre = inf(ctx, al * q, al * a * b / q) / inf(ctx, al * a, al * b)
    s = sum(A[n] * fin(ctx, n, q ** (-m), q / a) * (al * a * q ** m) ** n for n in range(m + 1))
    return pre * s


def _lemma_rhs(p, ctx):
    al, a, b = sc(ctx, p, "alpha a b")
    q = ctx.q
    m = p["m"]
    A = seqs(ctx, p, "A")

    def term(n):
        w = (
            (1 - al * q ** (2 * n))
            * fin(ctx, n, al, q / a, q / b)
            * (-al * a * b / q) ** n
            * q ** (n * (n - 1) // 2)
            / ((1 - al) * fin(ctx, n, q, al * a, al * b))
        )
        inner = sum(
            fin(ctx, l, q ** (-m), q ** (-n), al * q ** n) / fin(ctx, l, q / b) * (q ** (m + 2) / b) ** l * A[l]
            for l in range(min(n, m) + 1)
        )
        return w * inner

    return series(term, ctx)


# -- terminating transformations ---------------------------------------------------

def _tt_weight(ctx, al, a, b, m, n):
    q = ctx.q
    return (
        (1 - al * q ** (2 * n))
        * fin(ctx, n, q ** (-m), al, q / a, q / b)
        * (al * a * b * q ** (m - 1)) ** n
        / ((1 - al) * fin(ctx, n, q, al * q ** (m + 1), al * a, al * b))
    )


def _tt_prefactor(ctx, al, a, b, m):
    q = ctx.q
    return fin(ctx, m, al * q, al * a * b / q) / fin(ctx, m, al * a, al * b)


def _tt_lhs(p, ctx):
    al, a, b = sc(ctx, p, "alpha a b")
    q = ctx.q
    m = p["m"]
    A = seqs(ctx, p, "A")
    s = sum(
        fin(ctx, n, q ** (-m), q / a, q / b) * q ** n / fin(ctx, n, q ** 2 / (al * a * b * q ** m)) * A[n]
        for n in range(m + 1)
    )
    return _tt_prefactor(ctx, al, a, b, m) * s


def _tt_rhs(p, ctx):
    al, a, b = sc(ctx, p, "alpha a b")
    q = ctx.q
    m = p["m"]
    A = seqs(ctx, p, "A")
    total = ctx.scalar(0)
    for n in range(m + 1):
        inner = sum(fin(ctx, k, q ** (-n), al * q ** n) * q ** k * A[k] for k in range(n + 1))
        total += _tt_weight(ctx, al, a, b, m, n) * inner
    return total


def _t5_lhs(p, ctx):
    al, a, b, be, ga, c, d, hh, z = sc(ctx, p, "alpha a b beta gamma c d h z")
    q = ctx.q
    m = p["m"]
    val = hyper(
        ctx,
        [q ** (-m), q / a, q / b, be, ga],
        [q ** 2 / (al * a * b * q ** m), c, d, hh],
        q * z,
    )
    return _tt_prefactor(ctx, al, a, b, m) * val


def _t5_rhs(p, ctx):
    al, a, b, be, ga, c, d, hh, z = sc(ctx, p, "alpha a b beta gamma c d h z")
    q = ctx.q
    m = p["m"]
    return sum(
        _tt_weight(ctx, al, a, b, m, n)
        * hyper(ctx, [q ** (-n), al * q ** n, be, ga], [c, d, hh], q * z)
        for n in range(m + 1)
    )


def _ew_lhs(p, ctx):
    al, a, b, be, c, d = sc(ctx, p, "alpha a b beta c d")
    q = ctx.q
    m = p["m"]
    val = hyper(ctx, [q ** (-m), q / a, q / b, be], [q ** 2 / (al * a * b * q ** m), c, d], q)
    return _tt_prefactor(ctx, al, a, b, m) * val


def _ew_rhs(p, ctx):
    al, a, b, be, c, d = sc(ctx, p, "alpha a b beta c d")
    q = ctx.q
    m = p["m"]
    return sum(
        _tt_weight(ctx, al, a, b, m, n) * hyper(ctx, [q ** (-n), al * q ** n, be], [c, d], q)
        for n in range(m + 1)
    )


def _ww_lhs(p, ctx):
    al, a, b, c, d = sc(ctx, p, "alpha a b c d")
    q = ctx.q
    m = p["m"]
    val = hyper(
        ctx,
        [q ** (-m), q / a, q / b, al * c * d / q],
        [al * c, al * d, q ** 2 / (al * a * b * q ** m)],
        q,
    )
    return _tt_prefactor(ctx, al, a, b, m) * val


def _ww_rhs(p, ctx):
    al, a, b, c, d = sc(ctx, p, "alpha a b c d")
    q = ctx.q
    m = p["m"]
    r = ctx.sqrt(al)
    return hyper(
        ctx,
        [q ** (-m), q * r, -q * r, al, q / a, q / b, q / c, q / d],
        [r, -r, al * a, al * b, al * c, al * d, al * q ** (m + 1)],
        al ** 2 * a * b * c * d * q ** m / q ** 2,
    )


def _ps_lhs(p, ctx):
    al, c, d = sc(ctx, p, "alpha c d")
    q = ctx.q
    n = p["n"]
    return hyper(ctx, [q ** (-n), al * q ** n, al * c * d / q], [al * c, al * d], q)


def _ps_rhs(p, ctx):
    al, c, d = sc(ctx, p, "alpha c d")
    q = ctx.q
    n = p["n"]
    return fin(ctx, n, q / c, q / d) / fin(ctx, n, al * c, al * d) * (al * c * d / q) ** n


def _cv_lhs(p, ctx):
    al, b = sc(ctx, p, "alpha b")
    q = ctx.q
    n, l = p["n"], p["l"]
    s = hyper(ctx, [q ** (-(n - l)), al * q ** (n + l)], [al * b * q ** l], q)
    return [s, s]


def _cv_rhs(p, ctx):
    al, b = sc(ctx, p, "alpha b")
    q = ctx.q
    n, l = p["n"], p["l"]
    N, A, Cc = n - l, al * q ** (n + l), al * b * q ** l
    standard = qpoch_finite(Cc / A, ctx, N) * A ** N / qpoch_finite(Cc, ctx, N)
    closed = (
        (-al * b) ** (n - l)
        * q ** ((n * (n - 1) - l * (l - 1)) // 2)
        * fin(ctx, n, q / b)
        * fin(ctx, l, al * b)
        / (fin(ctx, l, q / b) * fin(ctx, n, al * b))
    )
    return [standard, closed]


# -- nonterminating transformation ------------------------------------------------

def _nt_lhs(p, ctx):
    al, a, b, be, ga, c, d, hh, z = sc(ctx, p, "alpha a b beta gamma c d h z")
    q = ctx.q
    pre = inf(ctx, al * q, al * a * b / q) / inf(ctx, al * a, al * b)
    return pre * hyper(ctx, [q / a, q / b, be, ga], [c, d, hh], al * a * b * z / q)


def _nt_rhs(p, ctx):
    al, a, b = sc(ctx, p, "alpha a b")
    q = ctx.q

    def term(n):
        w = (
            (1 - al * q ** (2 * n))
            * fin(ctx, n, al, q / a, q / b)
            * (-al * a * b / q) ** n
            * q ** (n * (n - 1) / 2)
            / ((1 - al) * fin(ctx, n, q, al * a, al * b))
        )

        def up(h):
            al_, be, ga = sc(h, p, "alpha beta gamma")
            return [h.q ** (-n), al_ * h.q ** n, be, ga]

        def lo(h):
            return sc(h, p, "c d h")

        inner = _inner(p, n, up, lo, lambda h: h.q * h.scalar(p["z"]))
        return w * ctx.scalar(inner)

    return series(term, ctx)


# -- samplers -------------------------------------------------------------------

def _with_seq(name, length):
    return lambda rng, p: {name: arb_seq(rng, length)}


def _term_dps(p):
    return cancel_dps(p["q"], p.get("m", p.get("n", 8)))


def _tt_safe():
    # every denominator of the terminating transformations stays away from 0
    return (
        poch_safe(lambda p: p["alpha"] * p["a"], lambda p: p["alpha"] * p["b"], n=9),
        poch_safe(lambda p: p["alpha"] * p["q"] ** (p["m"] + 1), n=9),
        poch_safe(lambda p: p["q"] ** 2 / (p["alpha"] * p["a"] * p["b"] * p["q"] ** p["m"]), n=9),
        lambda p: abs(1 - p["alpha"]) >= 1e-3,
    )


_TT_BOXES = {"alpha": C(0.05, 0.9), "a": C(0.3, 2.0), "b": C(0.3, 2.0), "m": I(0, 8)}

CHECKS = [
    IdentityCheck(
        id="rogers-6phi5",
        paper_ref="Rogers 6phi5 summation, |alpha abc/q^2| < 1",
        mode="numeric",
        group="nonterminating",
        lhs=_r6_lhs,
        rhs=_r6_rhs,
        sampler=_rogers_sampler(0.9 * G),
        dps=30,
    ),
    IdentityCheck(
        id="rogers-ext",
        paper_ref="extension of the Rogers 6phi5 summation with an inner 4phi3",
        mode="numeric",
        group="nonterminating",
        lhs=_rext_lhs,
        rhs=_rext_rhs,
        sampler=_rogers_sampler(
            0.15,
            "alpha a b c beta gamma",
            (
                poch_safe(lambda p: p["alpha"] * p["beta"] * p["gamma"] * p["a"] * p["b"] / p["q"]),
                lambda p: abs(p["alpha"] * p["beta"] * p["gamma"] * p["a"] * p["b"] / p["q"]) <= 0.9 * G,
            ),
        ),
    ),
    IdentityCheck(
        id="irs-3phi2",
        paper_ref="Ismail-Rahman-Suslov summation: the gamma = 0 case with an inner 3phi2",
        mode="numeric",
        group="nonterminating",
        lhs=_irs_lhs,
        rhs=_irs_rhs,
        sampler=_rogers_sampler(0.15, "alpha a b c beta"),
    ),
    IdentityCheck(
        id="liu-expansion-f",
        paper_ref="general q-series expansion of f(alpha a), f a polynomial of degree <= 6",
        mode="numeric",
        group="nonterminating",
        lhs=_lexp_lhs,
        rhs=_lexp_rhs,
        sampler=Sampler(
            {"alpha": C(0.05, 0.9), "a": C(0.05, 1.0), "b": C(0.3, 2.0)},
            (
                lambda p: abs(p["a"] / p["q"]) <= 0.9 * G,
                poch_safe(lambda p: p["alpha"] * p["a"], lambda p: p["alpha"] * p["b"]),
                lambda p: abs(1 - p["alpha"]) >= 1e-3,
            ),
            extra=lambda rng, p: {"f": arb_seq(rng, rng.randint(1, 7))},
        ),
    ),
    IdentityCheck(
        id="liu-lemma",
        paper_ref="expansion lemma for an arbitrary complex sequence A_n, m <= 8",
        mode="numeric",
        group="terminating",
        lhs=_lemma_lhs,
        rhs=_lemma_rhs,
        sampler=Sampler(
            dict(_TT_BOXES),
            (
                poch_safe(lambda p: p["alpha"] * p["a"], lambda p: p["alpha"] * p["b"]),
                poch_safe(lambda p: p["q"] / p["b"], n=9),
                lambda p: abs(1 - p["alpha"]) >= 1e-3,
            ),
            extra=_with_seq("A", 9),
        ),
        tol=TERM_TOL,
        dps=_term_dps,
    ),
    IdentityCheck(
        id="terminating-transform",
        paper_ref="terminating transformation for an arbitrary complex sequence A_n, m <= 8",
        mode="numeric",
        group="terminating",
        lhs=_tt_lhs,
        rhs=_tt_rhs,
        sampler=Sampler(dict(_TT_BOXES), _tt_safe(), extra=_with_seq("A", 9)),
        tol=TERM_TOL,
        dps=_term_dps,
    ),
    IdentityCheck(
        id="transform-5phi4",
        paper_ref="terminating 5phi4 to 4phi3 transformation",
        mode="numeric",
        group="terminating",
        lhs=_t5_lhs,
        rhs=_t5_rhs,
        sampler=Sampler(
            {**_TT_BOXES, "beta": C(0.05, 1.5), "gamma": C(0.05, 1.5), "c": C(0.05, 2.0),
             "d": C(0.05, 2.0), "h": C(0.05, 2.0), "z": C(0.05, 1.5)},
            _tt_safe() + (poch_safe(lambda p: p["c"], lambda p: p["d"], lambda p: p["h"], n=9),),
        ),
        tol=TERM_TOL,
        dps=_term_dps,
    ),
    IdentityCheck(
        id="ext-watson",
        paper_ref="extension of Watson's q-analogue of Whipple's theorem: 4phi3 to 3phi2",
        mode="numeric",
        group="terminating",
        lhs=_ew_lhs,
        rhs=_ew_rhs,
        sampler=Sampler(
            {**_TT_BOXES, "beta": C(0.05, 1.5), "c": C(0.05, 2.0), "d": C(0.05, 2.0)},
            _tt_safe() + (poch_safe(lambda p: p["c"], lambda p: p["d"], n=9),),
        ),
        tol=TERM_TOL,
        dps=_term_dps,
    ),
    IdentityCheck(
        id="watson-whipple",
        paper_ref="Watson's q-analogue of Whipple's theorem: terminating 4phi3 as an 8phi7",
        mode="numeric",
        group="terminating",
        lhs=_ww_lhs,
        rhs=_ww_rhs,
        sampler=Sampler(
            {**_TT_BOXES, "c": C(0.3, 2.0), "d": C(0.3, 2.0)},
            _tt_safe()
            + (
                poch_safe(lambda p: p["alpha"] * p["c"], lambda p: p["alpha"] * p["d"], n=9),
                poch_safe(lambda p: p["alpha"] ** 0.5, lambda p: -p["alpha"] ** 0.5, n=9),
            ),
        ),
        tol=TERM_TOL,
        dps=_term_dps,
    ),
    IdentityCheck(
        id="pfaff-saalschutz",
        paper_ref="q-Pfaff-Saalschutz summation of a balanced terminating 3phi2",
        mode="numeric",
        group="terminating",
        lhs=_ps_lhs,
        rhs=_ps_rhs,
        sampler=Sampler(
            {"alpha": C(0.05, 1.5), "c": C(0.2, 2.0), "d": C(0.2, 2.0), "n": I(0, 8)},
            (poch_safe(lambda p: p["alpha"] * p["c"], lambda p: p["alpha"] * p["d"], n=9),),
        ),
        tol=TERM_TOL,
        dps=_term_dps,
    ),
    IdentityCheck(
        id="chu-vandermonde",
        paper_ref="q-Chu-Vandermonde summation in both closed forms",
        mode="numeric",
        group="terminating",
        lhs=_cv_lhs,
        rhs=_cv_rhs,
        sampler=Sampler(
            {"alpha": C(0.05, 1.5), "b": C(0.2, 2.0), "n": I(0, 8)},
            (
                poch_safe(lambda p: p["alpha"] * p["b"], lambda p: p["q"] / p["b"], n=9),
            ),
            extra=lambda rng, p: {"l": rng.randint(0, p["n"])},
        ),
        tol=TERM_TOL,
        dps=_term_dps,
    ),
    IdentityCheck(
        id="nonterminating-transform",
        paper_ref="nonterminating 4phi3 transformation, |alpha abz/q| < 1",
        mode="numeric",
        group="nonterminating",
        lhs=_nt_lhs,
        rhs=_nt_rhs,
        sampler=Sampler(
            {"alpha": C(0.05, 0.9), "a": C(0.3, 2.0), "b": C(0.3, 2.0), "beta": C(0.05, 1.5),
             "gamma": C(0.05, 1.5), "c": C(0.05, 2.0), "d": C(0.05, 2.0), "h": C(0.05, 2.0),
             "z": C(0.05, 1.5)},
            (
                bounded(0.5 * G, lambda p: p["alpha"] * p["a"] * p["b"] * p["z"] / p["q"]),
                poch_safe(lambda p: p["alpha"] * p["a"], lambda p: p["alpha"] * p["b"]),
                poch_safe(lambda p: p["c"], lambda p: p["d"], lambda p: p["h"]),
                lambda p: abs(1 - p["alpha"]) >= 1e-3,
            ),
        ),
        dps=30,
    ),
]
