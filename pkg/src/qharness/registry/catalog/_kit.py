"""Small evaluator helpers shared by catalog entries."""
from __future__ import annotations

import math
from functools import lru_cache

from ...errors import TruncationBudgetExceeded
from ...qcore import QContext, qpoch_finite, qpoch_infinite
from ...qhyper import phi

# a term this small relative to the partial sum counts as negligible
SERIES_EPS = 1e-19


def sc(ctx: QContext, p: dict, names: str):
    """Sampled parameters as working scalars, by space-separated names."""
    return [ctx.scalar(p[n]) for n in names.split()]


def seqs(ctx: QContext, p: dict, name: str):
    return [ctx.scalar(v) for v in p[name]]


def inf(ctx: QContext, *args):
    """``(a_1, ..., a_k; q)_inf``."""
    out = ctx.scalar(1)
    for a in args:
        out *= qpoch_infinite(a, ctx)
    return out


def fin(ctx: QContext, n: int, *args):
    """``(a_1, ..., a_k; q)_n``."""
    out = ctx.scalar(1)
    for a in args:
        out *= qpoch_finite(a, ctx, n)
    return out


def hyper(ctx: QContext, upper, lower, z):
    return phi(list(upper), list(lower), z, ctx)


def series(term, ctx: QContext, start: int = 0, min_terms: int = 4):
    """``sum_{n >= start} term(n)``, stopping after three negligible terms."""
    total = ctx.scalar(0)
    small = 0
    n = start
    while True:
        t = term(n)
        total += t
        if abs(t) <= SERIES_EPS * (1 + abs(total)):
            small += 1
            if small >= 3 and n - start >= min_terms:
                return total
        else:
            small = 0
        n += 1
        if n - start > ctx.max_terms:
            raise TruncationBudgetExceeded(f"series did not settle within {ctx.max_terms} terms")


def cancel_dps(q: float, m: int, base: int = 30) -> int:
    """Digits for a terminating sum at ``z = q`` with ``m + 1`` terms.

    Its largest terms reach about ``q^(-m(m+1)/2)`` times the result.
    """
    return base + int(math.ceil(m * (m + 1) / 2 * math.log10(1 / q)))


def at_dps(p: dict, digits: int) -> QContext:
    """A context on the sampled ``q`` with the requested precision.

    Derived parameters must be rebuilt from the raw samples inside it;
    rounding them at lower precision would undo the extra digits.
    """
    return _ctx(p["q"], digits)


@lru_cache(maxsize=256)
def _ctx(q, digits):
    return QContext(q, dps=digits)


def arb_seq(rng, n: int):
    """``n`` complex numbers with modulus at most 1."""
    from ..sampling import seq

    return seq(rng, n, 1.0)


def operator_on_products(ctx: QContext, cs, ds, x, y, inverse_q: bool = False, start: int = 64, limit: int = 2048):
    """``T(y D)`` applied to ``prod (c x)_inf / prod (d x)_inf``, evaluated at ``x``.

    Expands in powers of ``x`` and sums ``c_m h_m(x, y)`` (or ``c_m g_m``),
    doubling the order until the last ten terms are negligible.
    """
    from ...qcalculus import poch_ratio_series
    from ...qpoly import PolyArgs, rogers_szego, stieltjes_wigert

    poly = stieltjes_wigert if inverse_q else rogers_szego
    x, y = ctx.scalar(x), ctx.scalar(y)
    order = start
    while True:
        s = poch_ratio_series(cs, ds, ctx, order)
        terms = [c * poly(PolyArgs(x, y, m, ctx)) for m, c in enumerate(s.coeffs)]
        total = sum(terms, ctx.scalar(0))
        if max(abs(t) for t in terms[-10:]) <= SERIES_EPS * (1 + abs(total)):
            return total
        order *= 2
        if order > limit:
            raise TruncationBudgetExceeded(f"operator series not settled at order {limit}")


class ProductIntegrand:
    """``x -> prod (n_i x)_inf / prod (d_j x)_inf`` tuned for Jackson nodes.

    Jackson sums visit ``x, qx, q^2 x, ...`` for each endpoint.  Since
    ``(A q x)_inf = (A x)_inf / (1 - A x)``, a node that is ``q`` times a
    previously seen one costs one factor per parameter instead of a fresh
    infinite product.
    """

    def __init__(self, ctx: QContext, nums, dens):
        self.ctx = ctx
        self.nums = [ctx.scalar(a) for a in nums]
        self.dens = [ctx.scalar(a) for a in dens]
        self._last = []  # (x, value) per endpoint chain

    def _fresh(self, x):
        out = self.ctx.scalar(1)
        for a in self.nums:
            out *= qpoch_infinite(a * x, self.ctx)
        for a in self.dens:
            out /= qpoch_infinite(a * x, self.ctx)
        return out

    def __call__(self, x):
        x = self.ctx.scalar(x)
        q = self.ctx.q
        for i, (px, pv) in enumerate(self._last):
            if abs(x - q * px) <= 1e-12 * abs(x):
                v = pv
                for a in self.nums:
                    v /= 1 - a * px
                for a in self.dens:
                    v *= 1 - a * px
                self._last[i] = (x, v)
                return v
        v = self._fresh(x)
        self._last.append((x, v))
        return v


def inverse_operator_pointwise(ctx: QContext, f, x, y, limit: int = 200):
    """``T(y D_{1/q})`` applied to ``f`` at ``x``, straight from the definition.

    ``sum_n (-y)^n q^(n(n+1)/2) D_{1/q}^n f(x) / (q;q)_n``.  Needed where a
    Maclaurin route diverges, as for quotients with a pole in ``x``.  The
    n-th difference reuses ``f`` at the nodes ``x q^-k``, which are cached.
    Heavy cancellation: run it in an mp context.
    """
    from ...qcalculus import qderiv_point_n

    memo = {}

    def cached(z):
        if z not in memo:
            memo[z] = f(z)
        return memo[z]

    q = ctx.q
    x, y = ctx.scalar(x), ctx.scalar(y)
    total = ctx.scalar(0)
    weight = ctx.scalar(1)
    small = 0
    for n in range(limit + 1):
        if n:
            weight *= -y * q ** n / (1 - q ** n)
        t = weight * qderiv_point_n(cached, x, n, ctx, inverse_q=True)
        total += t
        if abs(t) <= SERIES_EPS * (1 + abs(total)):
            small += 1
            if small >= 3 and n >= 4:
                return total
        else:
            small = 0
    raise TruncationBudgetExceeded(f"inverse operator series not settled after {limit} terms")
