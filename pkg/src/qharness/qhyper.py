"""Basic hypergeometric series and the q-Lauricella multiple sum."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import Divergent, TruncationBudgetExceeded, ZeroDenominator
from .qcore import ZERO_FACTOR_TOL, QContext, qpoch_infinite

MAX_TERMINATING_INDEX = 512
TERMINATING_RTOL = 1e-12


@dataclass(frozen=True)
class HyperSpec:
    upper: tuple
    lower: tuple
    z: Any
    ctx: QContext

    def __init__(self, upper, lower, z, ctx):
        object.__setattr__(self, "upper", tuple(ctx.scalar(a) for a in upper))
        object.__setattr__(self, "lower", tuple(ctx.scalar(b) for b in lower))
        object.__setattr__(self, "z", ctx.scalar(z))
        object.__setattr__(self, "ctx", ctx)


@dataclass(frozen=True)
class LauricellaSpec:
    a: Any
    c: Any
    xs: tuple
    bs: tuple
    ctx: QContext

    def __post_init__(self):
        if len(self.xs) < 1 or len(self.xs) != len(self.bs):
            raise ValueError("need k >= 1 and len(xs) == len(bs)")


def q_neg_power(m: int, ctx: QContext):
    """The parameter ``q^{-m}`` that makes a series terminate after ``m+1`` terms."""
    return ctx.scalar(ctx.q ** (-m))


def terminating_index(x, ctx: QContext) -> int | None:
    """Return ``m`` if ``x`` equals ``q^{-m}`` (``0 <= m <= 512``) to 1e-12 relative."""
    x = ctx.scalar(x)
    mag = abs(x)
    if mag == 0 or abs(x.imag) > TERMINATING_RTOL * mag:
        return None
    re = float(x.real)
    if re <= 0:
        return None
    m = round(math.log(re) / -math.log(float(ctx.q)))
    if m < 0 or m > MAX_TERMINATING_INDEX:
        return None
    if abs(x - ctx.q ** (-m)) <= TERMINATING_RTOL * mag:
        return m
    return None


def _spec_terminating(spec: HyperSpec) -> int | None:
    found = [m for m in (terminating_index(a, spec.ctx) for a in spec.upper) if m is not None]
    return min(found) if found else None


def _sum_terms(spec: HyperSpec, stop: int | None):
    ctx = spec.ctx
    q = ctx.q
    upper, lower, z = spec.upper, spec.lower, spec.z
    expo = 1 + len(lower) - len(upper)
    params = [abs(p) for p in upper + lower]
    one = ctx.scalar(1)
    term = one
    total = one
    small = 0
    qn = ctx.real(1)
    n = 0
    while True:
        if stop is not None and n >= stop:
            return total
        num = one
        for a in upper:
            num *= 1 - a * qn
        den = 1 - q * qn
        for b in lower:
            f = 1 - b * qn
            if abs(f) <= ZERO_FACTOR_TOL:
                raise ZeroDenominator(f"lower parameter {b} gives a zero factor at n={n}")
            den *= f
        term = term * num / den * z
        if expo:
            term *= (-qn) ** expo
        total += term
        n += 1
        qn *= q
        if stop is not None:
            continue
        # only trust tiny terms once every parameter has settled (|p| q^n <= 1/2)
        settled = all(p * qn <= 0.5 for p in params)
        if settled and abs(term) <= ctx.tail_tol * (1 + abs(total)):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
        if n > ctx.max_terms:
            raise TruncationBudgetExceeded(f"phi needed more than {ctx.max_terms} terms")


def phi_eval(spec: HyperSpec):
    """Sum ``r phi s (upper; lower; q, z)``, terminating or convergent."""
    m = _spec_terminating(spec)
    if m is not None:
        return _sum_terms(spec, m)
    r, s = len(spec.upper), len(spec.lower)
    if r > s + 1:
        raise Divergent(f"{r}phi{s} does not converge unless it terminates")
    if r == s + 1 and abs(spec.z) >= 1:
        raise Divergent(f"{r}phi{s} needs |z| < 1, got |z|={float(abs(spec.z)):.6g}")
    return _sum_terms(spec, None)


def phi_terminating(spec: HyperSpec, m: int):
    """Finite sum of the first ``m + 1`` terms; an upper parameter must be ``q^{-m}``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if not any(terminating_index(a, spec.ctx) == m for a in spec.upper):
        raise ValueError(f"no upper parameter equals q^-{m}")
    return _sum_terms(spec, m)


def phi(upper: Sequence, lower: Sequence, z, ctx: QContext):
    """Shorthand for ``phi_eval(HyperSpec(upper, lower, z, ctx))``."""
    return phi_eval(HyperSpec(upper, lower, z, ctx))


# -- q-Lauricella ---------------------------------------------------------

def _check_lauricella(spec: LauricellaSpec):
    xs = [spec.ctx.scalar(x) for x in spec.xs]
    if any(abs(x) >= 1 for x in xs):
        raise Divergent("q-Lauricella sum needs every |x_i| < 1")
    return xs


def lauricella_sum(spec: LauricellaSpec, per_index_cap: int):
    """Truncated multiple sum with every ``n_i <= per_index_cap``.

    The k-fold sum is regrouped by total degree ``s = n_1 + ... + n_k``: the
    single-index series are convolved, then weighted by ``(a)_s/(c)_s``.
    """
    ctx = spec.ctx
    xs = _check_lauricella(spec)
    if per_index_cap < 0:
        raise ValueError("per_index_cap must be nonnegative")
    q = ctx.q
    series = []
    for x, b in zip(xs, spec.bs):
        b = ctx.scalar(b)
        u = [ctx.scalar(1)]
        qn = ctx.real(1)
        for n in range(per_index_cap):
            u.append(u[-1] * (1 - b * qn) * x / (1 - q * qn))
            qn *= q
        series.append(u)
    conv = series[0]
    for u in series[1:]:
        out = [ctx.scalar(0)] * (len(conv) + len(u) - 1)
        for i, ci in enumerate(conv):
            if ci == 0:
                continue
            for j, uj in enumerate(u):
                out[i + j] += ci * uj
        conv = out
    a, c = ctx.scalar(spec.a), ctx.scalar(spec.c)
    weight = ctx.scalar(1)
    total = ctx.scalar(0)
    qs = ctx.real(1)
    for s, e in enumerate(conv):
        total += weight * e
        f = 1 - c * qs
        if abs(f) <= ZERO_FACTOR_TOL and s + 1 < len(conv):
            raise ZeroDenominator(f"(c;q)_{s + 1} vanishes")
        weight = weight * (1 - a * qs) / f
        qs *= q
    return total


def lauricella_tail_bound(spec: LauricellaSpec, per_index_cap: int) -> float:
    """Upper bound on the part of the full sum discarded by ``per_index_cap``.

    Uses ``|(a)_s/(c)_s| <= (-|a|;q)_inf / prod_k min(1, |1 - c q^k|)`` and
    ``|(b)_n/(q)_n| <= (-|b|;q)_inf/(q;q)_inf``, which leaves a geometric tail
    in each index.
    """
    ctx = spec.ctx
    xs = _check_lauricella(spec)
    fctx = ctx.with_dps(None)
    q = float(ctx.q)
    a, c = complex(spec.a), complex(spec.c)
    num = abs(qpoch_infinite(-abs(a), fctx))
    low = 1.0
    k = 0
    while abs(c) * q ** k > 0.5:
        low *= min(1.0, abs(1 - c * q ** k))
        k += 1
    low *= abs(qpoch_infinite(abs(c) * q ** k, fctx))
    b_ac = num / low if low > 0 else math.inf
    qq = abs(qpoch_infinite(q, fctx))
    rhos = [abs(complex(x)) for x in xs]
    cs = [abs(qpoch_infinite(-abs(complex(b)), fctx)) / qq for b in spec.bs]
    bound = 0.0
    for i, rho in enumerate(rhos):
        piece = rho ** (per_index_cap + 1) / (1 - rho)
        for j, other in enumerate(rhos):
            if j != i:
                piece /= 1 - other
        bound += piece
    return b_ac * math.prod(cs) * bound


def lauricella_cap(spec: LauricellaSpec, tol: float, start: int = 8, limit: int = 4000) -> int:
    """Smallest cap (doubling search, then refined) whose tail bound is at most ``tol``."""
    hi = start
    while lauricella_tail_bound(spec, hi) > tol:
        hi *= 2
        if hi > limit:
            raise TruncationBudgetExceeded("q-Lauricella tail bound does not reach the tolerance")
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if lauricella_tail_bound(spec, mid) <= tol:
            hi = mid
        else:
            lo = mid
    return hi
