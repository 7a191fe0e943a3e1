"""Scalar q-arithmetic: q-shifted factorials and Gaussian binomials.

Every routine is written against plain ``+ - * /`` and ``abs`` so it runs on
machine complex numbers (the default) or on mpmath ``mpc`` values when the
context carries a working precision.  Context precision is per-instance;
there is no global numeric state.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from numbers import Number
from typing import Any, Iterable

import mpmath

from .errors import DivisionByZero, NonFinite, TruncationBudgetExceeded

INF = math.inf

# factors with |1 - a q^k| below this are treated as exact zeros
ZERO_FACTOR_TOL = 1e-13

# rows up to this size use the additive Pascal recurrence
EXACT_ROW_LIMIT = 64


@dataclass(frozen=True)
class QContext:
    """The base ``q`` together with the truncation policy for infinite objects.

    ``dps`` selects the arithmetic: ``None`` means machine doubles, an integer
    means mpmath complex numbers carrying that many decimal digits.
    """

    q: Any
    max_terms: int = 10000
    tail_tol: float = 1e-15
    series_order: int = 100
    dps: int | None = None
    _mp: Any = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.q, complex) or (
            isinstance(self.q, mpmath.mpc) and self.q.imag != 0
        ):
            raise ValueError("complex q is not supported")
        qf = float(self.q)
        if not (0.0 < qf < 1.0):
            raise ValueError(f"q must lie in (0, 1), got {self.q!r}")
        if not self.tail_tol > 0:
            raise ValueError("tail_tol must be positive")
        if self.max_terms < 1 or self.series_order < 1:
            raise ValueError("max_terms and series_order must be positive")
        if self.dps is not None:
            mp = mpmath.MPContext()
            mp.dps = int(self.dps)
            object.__setattr__(self, "_mp", mp)
            object.__setattr__(self, "q", _to_mpf(mp, self.q))
        else:
            object.__setattr__(self, "q", qf if not isinstance(self.q, Fraction) else float(self.q))

    # -- numeric helpers -------------------------------------------------
    @property
    def mp(self):
        return self._mp

    def scalar(self, x) -> Any:
        """Convert ``x`` into the working complex type of this context."""
        if self._mp is None:
            return complex(x)
        if isinstance(x, Fraction):
            return self._mp.mpc(self._mp.mpf(x.numerator) / x.denominator)
        return self._mp.mpc(x)

    def real(self, x) -> Any:
        if self._mp is None:
            return float(x)
        if isinstance(x, Fraction):
            return self._mp.mpf(x.numerator) / x.denominator
        return self._mp.mpf(x)

    def sqrt(self, x):
        if self._mp is None:
            return cmath.sqrt(complex(x))
        return self._mp.sqrt(self._mp.mpc(x))

    def exp(self, x):
        if self._mp is None:
            return cmath.exp(complex(x))
        return self._mp.exp(self._mp.mpc(x))

    @property
    def pi(self):
        return math.pi if self._mp is None else self._mp.pi

    def with_base(self, q) -> "QContext":
        """Same policy, different base (used for series in ``q^2``)."""
        return replace(self, q=q)

    def with_dps(self, dps: int | None) -> "QContext":
        q = self.q if dps is not None else float(self.q)
        return replace(self, q=q, dps=dps)

    @property
    def cache_key(self):
        return (self.q, self.dps)


def _to_mpf(mp, x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def is_finite(x) -> bool:
    if isinstance(x, (mpmath.mpc, mpmath.mpf)):
        return bool(mpmath.isfinite(x))
    if isinstance(x, Number):
        z = complex(x)
        return math.isfinite(z.real) and math.isfinite(z.imag)
    return False


def check_finite(x, what: str = "value"):
    if not is_finite(x):
        raise NonFinite(f"{what} is not finite: {x!r}")
    return x


def qpow(ctx: QContext, k) -> Any:
    """``q**k`` in the working type; negative ``k`` gives exact ``q^{-m}``."""
    return ctx.q ** k


def qpoch_finite(a, ctx: QContext, n: int):
    """``(a; q)_n`` for any integer ``n``; negative ``n`` uses ``1/(a q^n; q)_{-n}``."""
    a = ctx.scalar(a)
    if n >= 0:
        out = ctx.scalar(1)
        qk = ctx.real(1)
        for _ in range(n):
            out *= 1 - a * qk
            qk *= ctx.q
        return out
    m = -n
    base = a * ctx.q ** n  # a q^{-m}
    den = ctx.scalar(1)
    qk = ctx.real(1)
    for k in range(m):
        f = 1 - base * qk
        if abs(f) <= ZERO_FACTOR_TOL:
            raise DivisionByZero(f"(a;q)_{n}: factor {k} of (aq^{n};q)_{m} vanishes")
        den *= f
        qk *= ctx.q
    return 1 / den


def qpoch_infinite(a, ctx: QContext):
    """``(a; q)_inf`` with a certified truncation point.

    Multiplies factors ``k = 0..K`` where ``K`` is the first index with
    ``|a| q^K <= tail_tol (1 - q)``; the relative error of the discarded
    tail is then at most ``exp(tail_tol q) - 1``.
    """
    a = ctx.scalar(a)
    amag = abs(a)
    if amag == 0:
        return ctx.scalar(1)
    threshold = ctx.tail_tol * (1 - ctx.q)
    out = ctx.scalar(1)
    qk = ctx.real(1)
    k = 0
    while True:
        out *= 1 - a * qk
        if amag * qk <= threshold:
            return out
        k += 1
        if k > ctx.max_terms:
            raise TruncationBudgetExceeded(
                f"(a;q)_inf with |a|={float(amag):.3g}, q={float(ctx.q)} needs more than {ctx.max_terms} factors"
            )
        qk *= ctx.q


def qpoch_multi(params: Iterable, ctx: QContext, n=INF):
    """``(a_1, ..., a_m; q)_n`` for integer ``n`` or ``n = INF``."""
    params = list(params)
    if not params:
        raise ValueError("qpoch_multi needs at least one parameter")
    out = ctx.scalar(1)
    for a in params:
        if n == INF:
            out *= qpoch_infinite(a, ctx)
        else:
            out *= qpoch_finite(a, ctx, int(n))
    return out


_ROW_CACHE: dict = {}


def qbinomial_row(n: int, ctx: QContext) -> tuple:
    """All Gaussian binomials ``[n, k]_q`` for ``k = 0..n`` as a tuple."""
    key = (ctx.cache_key, n)
    row = _ROW_CACHE.get(key)
    if row is not None:
        return row
    q = ctx.q
    one = ctx.real(1)
    if n <= EXACT_ROW_LIMIT:
        # additive recurrence: only sums of positive terms, no cancellation
        row = [one]
        for m in range(1, n + 1):
            prev = row
            qk = one
            new = [one]
            for k in range(1, m):
                qk = qk * q
                new.append(prev[k - 1] + qk * prev[k])
            new.append(one)
            row = new
    else:
        row = [one]
        for k in range(n):
            row.append(row[-1] * (1 - q ** (n - k)) / (1 - q ** (k + 1)))
    row = tuple(row)
    if len(_ROW_CACHE) > 20000:
        _ROW_CACHE.clear()
    _ROW_CACHE[key] = row
    return row


def qbinomial(n: int, k: int, ctx: QContext):
    """Gaussian binomial ``(q;q)_n / ((q;q)_k (q;q)_{n-k})``; zero outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return ctx.real(0)
    return qbinomial_row(n, ctx)[k]
