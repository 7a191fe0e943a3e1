"""Rogers-Szego and Stieltjes-Wigert polynomials and the Carlitz kernel H_k."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .errors import ZeroDenominator
from .qcore import ZERO_FACTOR_TOL, QContext, qbinomial_row


@dataclass(frozen=True)
class PolyArgs:
    x: Any
    y: Any
    n: int
    ctx: QContext

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("polynomial degree must be nonnegative")


def _binomial_sum(x, y, n: int, ctx: QContext, weight=None):
    x, y = ctx.scalar(x), ctx.scalar(y)
    row = qbinomial_row(n, ctx)
    total = ctx.scalar(0)
    xk = ctx.scalar(1)
    # y^{n-k} from the top down keeps y = 0 exact
    ypow = [ctx.scalar(1)]
    for _ in range(n):
        ypow.append(ypow[-1] * y)
    for k in range(n + 1):
        term = row[k] * xk * ypow[n - k]
        if weight is not None:
            term *= weight(k)
        total += term
        xk *= x
    return total


def rogers_szego(args: PolyArgs):
    """``h_n(x, y|q) = sum_k [n k] x^k y^(n-k)``."""
    return _binomial_sum(args.x, args.y, args.n, args.ctx)


def stieltjes_wigert(args: PolyArgs):
    """``g_n(x, y|q) = sum_k [n k] q^(k(k-n)) x^k y^(n-k)``."""
    q, n = args.ctx.q, args.n
    return _binomial_sum(args.x, args.y, n, args.ctx, lambda k: q ** (k * (k - n)))


def stieltjes_wigert_scaled(args: PolyArgs):
    """``q^(n^2/4) g_n(x, y|q)``, which stays O(1) where ``g_n`` itself overflows.

    The weights become ``q^((k - n/2)^2) <= 1``.
    """
    q, n = args.ctx.q, args.n
    return _binomial_sum(args.x, args.y, n, args.ctx, lambda k: q ** ((k - n / 2) ** 2))


def h(n: int, x, y, ctx: QContext):
    return rogers_szego(PolyArgs(x, y, n, ctx))


def g(n: int, x, y, ctx: QContext):
    return stieltjes_wigert(PolyArgs(x, y, n, ctx))


def carlitz_hk(a, b, u, v, k: int, ctx: QContext):
    """``H_k(a,b,u,v) = sum_r [k r] (au, av;q)_r b^r a^(k-r) / (abuv;q)_r``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a, b, u, v = (ctx.scalar(t) for t in (a, b, u, v))
    q = ctx.q
    row = qbinomial_row(k, ctx)
    apow = [ctx.scalar(1)]
    for _ in range(k):
        apow.append(apow[-1] * a)
    ratio = ctx.scalar(1)
    bpow = ctx.scalar(1)
    total = ctx.scalar(0)
    qr = ctx.real(1)
    for r in range(k + 1):
        total += row[r] * ratio * bpow * apow[k - r]
        if r == k:
            break
        den = 1 - a * b * u * v * qr
        if abs(den) <= ZERO_FACTOR_TOL:
            raise ZeroDenominator(f"(abuv;q)_{r + 1} vanishes")
        ratio = ratio * (1 - a * u * qr) * (1 - a * v * qr) / den
        bpow *= b
        qr *= q
    return total
