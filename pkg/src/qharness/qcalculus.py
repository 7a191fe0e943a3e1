"""q-derivatives, Jackson integrals, truncated Maclaurin series, the
q-exponential operators and the h_n / g_n expansion engine."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .errors import (
    IllConditionedFit,
    NearZeroPoint,
    NonFinite,
    NotQPDESolution,
    TruncationBudgetExceeded,
    ZeroConstantTerm,
)
from .qcore import QContext, is_finite, qbinomial_row
from .qpoly import PolyArgs, rogers_szego, stieltjes_wigert

NEAR_ZERO = 1e-8
PDE_TOL = 1e-6
FIT_TOL = 1e-6


# -- truncated Maclaurin series ---------------------------------------------

@dataclass(frozen=True)
class MaclaurinSeries:
    """Coefficients ``c_0..c_N`` of a power series truncated at ``x^N``."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def monomial(cls, n: int, order: int | None = None):
        order = n if order is None else order
        c = [0j] * (order + 1)
        if n <= order:
            c[n] = 1 + 0j
        return cls(c)

    def truncate(self, order: int) -> "MaclaurinSeries":
        if order >= self.order:
            return self
        return MaclaurinSeries(self.coeffs[: order + 1])

    def pad(self, order: int) -> "MaclaurinSeries":
        """Raise the order by appending zeros; only valid for polynomials."""
        if order <= self.order:
            return self
        zero = self.coeffs[0] * 0
        return MaclaurinSeries(self.coeffs + (zero,) * (order - self.order))

    def __call__(self, x):
        acc = self.coeffs[-1] * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "MaclaurinSeries") -> "MaclaurinSeries":
        n = min(self.order, other.order)
        return MaclaurinSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])])

    def scale(self, c) -> "MaclaurinSeries":
        return MaclaurinSeries([c * a for a in self.coeffs])


def series_mul(s1: MaclaurinSeries, s2: MaclaurinSeries) -> MaclaurinSeries:
    """Cauchy product truncated to the smaller order."""
    n = min(s1.order, s2.order)
    a, b = s1.coeffs, s2.coeffs
    out = []
    for k in range(n + 1):
        acc = a[0] * b[k]
        for i in range(1, k + 1):
            acc += a[i] * b[k - i]
        out.append(acc)
    return MaclaurinSeries(out)


def series_div(s1: MaclaurinSeries, s2: MaclaurinSeries) -> MaclaurinSeries:
    """Long division ``s1 / s2`` truncated to the smaller order."""
    b = s2.coeffs
    if abs(b[0]) <= 1e-300:
        raise ZeroConstantTerm("divisor has a vanishing constant term")
    n = min(s1.order, s2.order)
    a = s1.coeffs
    out = []
    for k in range(n + 1):
        acc = a[k]
        for i in range(1, k + 1):
            acc -= b[i] * out[k - i]
        out.append(acc / b[0])
    return MaclaurinSeries(out)


def _inverse_factorials(ctx: QContext, order: int):
    inv = [ctx.real(1)]
    qk = ctx.real(1)
    for _ in range(order):
        qk *= ctx.q
        inv.append(inv[-1] / (1 - qk))
    return inv


def poch_ratio_series(cs: Sequence, ds: Sequence, ctx: QContext, order: int) -> MaclaurinSeries:
    """Maclaurin series of ``prod (c_i x;q)_inf / prod (d_j x;q)_inf``."""
    inv = _inverse_factorials(ctx, order)
    one = ctx.scalar(1)
    out = MaclaurinSeries([one] + [one * 0] * order)
    for c in cs:
        c = ctx.scalar(c)
        coeffs, cn, gauss = [], one, ctx.real(1)
        for n in range(order + 1):
            coeffs.append(gauss * cn * inv[n])
            # (-1)^n q^{n(n-1)/2} advanced by one step
            gauss = -gauss * ctx.q ** n
            cn *= c
        out = series_mul(out, MaclaurinSeries(coeffs))
    for d in ds:
        d = ctx.scalar(d)
        coeffs, dn = [], one
        for n in range(order + 1):
            coeffs.append(dn * inv[n])
            dn *= d
        out = series_mul(out, MaclaurinSeries(coeffs))
    return out


# -- q-derivatives -----------------------------------------------------------

def _guard(x, scale, what="x"):
    if abs(x) <= NEAR_ZERO * scale:
        raise NearZeroPoint(f"{what}={x!r} is too close to 0 for a pointwise q-difference")


def qderiv_point(f: Callable, x, ctx: QContext, scale: float = 1.0, inverse_q: bool = False):
    """``(f(x) - f(Qx)) / x`` with ``Q = q`` or ``1/q``."""
    _guard(x, scale)
    x = ctx.scalar(x)
    Q = 1 / ctx.q if inverse_q else ctx.q
    return (f(x) - f(Q * x)) / x


def qderiv_point_n(f: Callable, x, n: int, ctx: QContext, inverse_q: bool = False, scale: float = 1.0):
    """``D_Q^n f(x)`` from the closed form of the n-th q-difference.

    ``D_Q^n f(x) = x^-n sum_k (-1)^k [n k]_Q Q^(k(k-1)/2 - (n-1)k) f(Q^k x)``.
    Cancellation is severe for large ``n``; use an mp context when it matters.
    """
    _guard(x, scale)
    x = ctx.scalar(x)
    Q = 1 / ctx.q if inverse_q else ctx.q
    row = qbinomial_row(n, ctx)
    total = x * 0
    for k in range(n + 1):
        # [n k]_{1/q} = q^{-k(n-k)} [n k]_q
        binom = row[k] * (ctx.q ** (-k * (n - k)) if inverse_q else 1)
        w = (-1) ** k * binom * Q ** (k * (k - 1) // 2 - (n - 1) * k)
        total += w * f(Q ** k * x)
    return total / x ** n


def qderiv_series(s: MaclaurinSeries, n: int, ctx: QContext, inverse_q: bool = False) -> MaclaurinSeries:
    """Apply ``D_Q^n`` coefficientwise: ``x^m -> (Q;Q)_m/(Q;Q)_(m-n) x^(m-n)``."""
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    if n == 0:
        return s
    if n > s.order:
        return MaclaurinSeries([s.coeffs[0] * 0])
    Q = 1 / ctx.q if inverse_q else ctx.q
    out = []
    for j in range(s.order - n + 1):
        m = j + n
        w = ctx.real(1)
        for i in range(j + 1, m + 1):
            w *= 1 - Q ** i
        out.append(s.coeffs[m] * w)
    return MaclaurinSeries(out)


def _operator_weight(ctx: QContext, y, j: int, n: int, inverse_q: bool, row):
    # coefficient that carries x^{j+n} to x^j; the 1/(q;q)_n of the operator
    # and the (Q;Q)_m/(Q;Q)_j of the derivative combine into one binomial
    w = row[n] * y ** n
    if inverse_q:
        w *= ctx.q ** (-n * j)
    return w


def qexp_T(y, s: MaclaurinSeries, ctx: QContext, inverse_q: bool = False) -> MaclaurinSeries:
    """``T(y D_q)`` (or ``T(y D_{1/q})``) applied to a truncated series.

    ``T(y D_q) = sum_n (y D_q)^n / (q;q)_n`` and
    ``T(y D_{1/q}) = sum_n (-y)^n q^(n(n+1)/2) D_{1/q}^n / (q;q)_n``.
    On ``x^m`` both reduce to finite sums, so the result is exact on the
    truncated space.
    """
    y = ctx.scalar(y)
    N = s.order
    out = []
    for j in range(N + 1):
        acc = s.coeffs[j] * 1
        for n in range(1, N - j + 1):
            c = s.coeffs[j + n]
            if c == 0:
                continue
            row = qbinomial_row(j + n, ctx)
            acc += c * _operator_weight(ctx, y, j, n, inverse_q, row)
        out.append(acc)
    return MaclaurinSeries(out)


def qexp_T_value(y, s: MaclaurinSeries, x, ctx: QContext, inverse_q: bool = False):
    """Evaluate ``T(y D){s}`` at ``x`` without forming the output series."""
    x, y = ctx.scalar(x), ctx.scalar(y)
    total = x * 0
    poly = rogers_szego if not inverse_q else stieltjes_wigert
    for m, c in enumerate(s.coeffs):
        if c != 0:
            total += c * poly(PolyArgs(x, y, m, ctx))
    return total


# -- bivariate functions -------------------------------------------------------

@dataclass(frozen=True)
class BivariateOracle:
    eval: Callable[[Any, Any], Any]
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def __call__(self, x, y):
        return self.eval(x, y)


def qpartial_point(f: BivariateOracle, var: str, x, y, ctx: QContext, inverse_q: bool = False):
    """q-partial derivative in ``x`` or ``y`` with the other variable frozen."""
    x, y = ctx.scalar(x), ctx.scalar(y)
    Q = 1 / ctx.q if inverse_q else ctx.q
    if var == "x":
        _guard(x, f.radius, "x")
        return (f(x, y) - f(Q * x, y)) / x
    if var == "y":
        _guard(y, f.radius, "y")
        return (f(x, y) - f(x, Q * y)) / y
    raise ValueError(f"var must be 'x' or 'y', got {var!r}")


def qpde_residual(f: BivariateOracle, grid: Sequence, ctx: QContext, inverse_q: bool = False) -> float:
    """``max |d_x f - d_y f|`` over the grid."""
    worst = 0.0
    for x, y in grid:
        r = abs(qpartial_point(f, "x", x, y, ctx, inverse_q) - qpartial_point(f, "y", x, y, ctx, inverse_q))
        if not is_finite(r):
            raise NonFinite(f"q-PDE residual is not finite at ({x}, {y})")
        worst = max(worst, float(r))
    return worst


def probe_grid(radius: float, ctx: QContext, inverse_q: bool = False, n: int = 5):
    """An ``n x n`` grid of complex points well inside the oracle radius.

    The inverse operator looks at ``x/q``, so its grid is pulled in by ``q``.
    """
    r = 0.45 * radius * (float(ctx.q) if inverse_q else 1.0)
    pts = [r * (0.35 + 0.65 * i / max(1, n - 1)) * cmath.exp(1j * (0.4 + 2.3 * i)) for i in range(n)]
    return [(x, y) for x in pts for y in pts]


@dataclass(frozen=True)
class HExpansion:
    """``f(x, y) = sum_m alphas[m] * basis_m(x, y|q)`` with basis h or g."""

    alphas: tuple
    basis: str
    ctx: QContext
    fit_residual: float = 0.0

    def __post_init__(self):
        if self.basis not in ("h", "g"):
            raise ValueError("basis must be 'h' or 'g'")

    def __call__(self, x, y):
        poly = rogers_szego if self.basis == "h" else stieltjes_wigert
        total = 0j
        for m, a in enumerate(self.alphas):
            if a != 0:
                total += a * complex(poly(PolyArgs(x, y, m, self.ctx)))
        return total


def _circle_fit(values: np.ndarray, radius: float, M: int):
    """Coefficients ``c_0..c_M`` from samples on ``|x| = radius``.

    The DFT of the samples gives ``c_j radius^j`` plus aliases from
    ``j + L``; the unused bins ``M+1..L-1`` measure how much energy the fit
    could not represent.
    """
    L = len(values)
    spec = np.fft.fft(values) / L
    scale = 1.0 + float(np.max(np.abs(values)))
    leak = float(np.max(np.abs(spec[M + 1:]))) / scale if L > M + 1 else 0.0
    floor = 1e-15 * scale
    scaled = spec[: M + 1]
    coeffs = [0j if abs(c) <= floor else complex(c) / radius ** j for j, c in enumerate(scaled)]
    return coeffs, leak


def expand_in_h(f, M: int, ctx: QContext, basis: str = "h", check: bool = True) -> HExpansion:
    """Coefficients ``alpha_0..alpha_M`` of ``f`` in the h (or g) basis.

    ``f`` is either a :class:`MaclaurinSeries` of ``x -> f(x, 0)`` or a
    :class:`BivariateOracle`.  An oracle must satisfy the matching q-PDE
    on a probe grid; otherwise :class:`NotQPDESolution` is raised.
    """
    if basis not in ("h", "g"):
        raise ValueError("basis must be 'h' or 'g'")
    if M < 0:
        raise ValueError("M must be nonnegative")
    if isinstance(f, MaclaurinSeries):
        alphas = tuple(complex(c) for c in f.coeffs[: M + 1])
        alphas += (0j,) * (M + 1 - len(alphas))
        return HExpansion(alphas, basis, ctx)
    inverse = basis == "g"
    if check:
        res = qpde_residual(f, probe_grid(f.radius, ctx, inverse), ctx, inverse)
        if res > PDE_TOL:
            raise NotQPDESolution(
                f"q-PDE residual {res:.3g} exceeds {PDE_TOL:g}; f is not expandable in {basis}_n"
            )
    # fit on the full radius; a smaller circle amplifies noise by 2^m
    L = 2 * (M + 1)
    R = f.radius
    nodes = [R * cmath.exp(2j * math.pi * k / L) for k in range(L)]
    values = np.array([complex(f(x, 0)) for x in nodes])
    if not np.all(np.isfinite(values)):
        raise NonFinite("oracle returned a non-finite value on the fit circle")
    coeffs, leak = _circle_fit(values, R, M)
    if leak > FIT_TOL:
        raise IllConditionedFit(f"fit leaves {leak:.3g} outside degree {M}; raise M or shrink the radius")
    return HExpansion(tuple(coeffs), basis, ctx, leak)


@dataclass(frozen=True)
class HExpansion2:
    """Two-pair expansion ``sum alphas[m][n] b_m(x1, y1) b_n(x2, y2)``."""

    alphas: tuple
    basis: str
    ctx: QContext
    fit_residual: float = 0.0

    def __call__(self, x1, y1, x2, y2):
        poly = rogers_szego if self.basis == "h" else stieltjes_wigert
        M = len(self.alphas) - 1
        p1 = [complex(poly(PolyArgs(x1, y1, m, self.ctx))) for m in range(M + 1)]
        p2 = [complex(poly(PolyArgs(x2, y2, m, self.ctx))) for m in range(M + 1)]
        total = 0j
        for m, row in enumerate(self.alphas):
            for n, a in enumerate(row):
                if a != 0:
                    total += a * p1[m] * p2[n]
        return total


def expand_in_h2(f: Callable, radius: float, M: int, ctx: QContext, basis: str = "h", check: bool = True) -> HExpansion2:
    """Two-pair version of :func:`expand_in_h` for ``f(x1, y1, x2, y2)``.

    Follows the induction: expand in the first pair, then expand every
    coefficient function in the second.  Both coefficient layers come from a
    single 2-D fit of ``f(x1, 0, x2, 0)``.
    """
    inverse = basis == "g"
    if check:
        grid = probe_grid(radius, ctx, inverse, n=3)
        worst = 0.0
        for a, b in grid:
            for c, d in grid[::2]:
                first = BivariateOracle(lambda x, y: f(x, y, c, d), radius)
                second = BivariateOracle(lambda x, y: f(a, b, x, y), radius)
                worst = max(worst, qpde_residual(first, [(a, b)], ctx, inverse))
                worst = max(worst, qpde_residual(second, [(c, d)], ctx, inverse))
        if worst > PDE_TOL:
            raise NotQPDESolution(f"q-PDE residual {worst:.3g} exceeds {PDE_TOL:g} in some pair")
    L = 2 * (M + 1)
    nodes = [radius * cmath.exp(2j * math.pi * k / L) for k in range(L)]
    values = np.array([[complex(f(x1, 0, x2, 0)) for x2 in nodes] for x1 in nodes])
    if not np.all(np.isfinite(values)):
        raise NonFinite("oracle returned a non-finite value on the fit torus")
    spec = np.fft.fft2(values) / (L * L)
    scale = 1.0 + float(np.max(np.abs(values)))
    mask = np.ones_like(spec, dtype=bool)
    mask[: M + 1, : M + 1] = False
    leak = float(np.max(np.abs(spec[mask]))) / scale
    if leak > FIT_TOL:
        raise IllConditionedFit(f"2-D fit leaves {leak:.3g} outside the degree box")
    floor = 1e-15 * scale
    alphas = tuple(
        tuple(0j if abs(spec[m, n]) <= floor else complex(spec[m, n]) / radius ** (m + n) for n in range(M + 1))
        for m in range(M + 1)
    )
    return HExpansion2(alphas, basis, ctx, leak)


# -- Jackson integral ------------------------------------------------------------

def _node_value(f, x, where):
    try:
        v = f(x)
    except ZeroDivisionError as exc:
        raise NonFinite(f"integrand is singular at the node {where}") from exc
    if not is_finite(v):
        raise NonFinite(f"integrand is not finite at the node {where}")
    return v


def jackson_qintegral_with_tail(f: Callable, a, b, ctx: QContext):
    """Jackson integral together with the bound on the discarded tail.

    ``int_a^b f d_qx = (1-q) sum_n [b f(b q^n) - a f(a q^n)] q^n``.  After term
    ``T_K`` the rest is bounded by ``|T_K| rho/(1-rho)`` where ``rho`` is the
    larger of ``q`` and the observed term ratio; summation stops once that
    bound is below ``tail_tol (1 + |I|)``.
    """
    q = ctx.q
    a, b = ctx.scalar(a), ctx.scalar(b)
    total = a * 0
    prev = None
    qn = ctx.real(1)
    for n in range(ctx.max_terms + 1):
        term = qn * (b * _node_value(f, b * qn, f"b q^{n}") - a * _node_value(f, a * qn, f"a q^{n}"))
        total += term
        mag = float(abs(term))
        if n >= 2 and prev is not None:
            ratio = mag / prev if prev > 0 else 0.0
            rho = max(float(q), ratio)
            if rho < 1:
                tail = mag * rho / (1 - rho)
                if tail <= ctx.tail_tol * (1 + float(abs(total))):
                    return (1 - q) * total, float((1 - q) * tail)
        prev = mag
        qn *= q
    raise TruncationBudgetExceeded(f"Jackson integral did not settle within {ctx.max_terms} terms")


def jackson_qintegral(f: Callable, a, b, ctx: QContext):
    return jackson_qintegral_with_tail(f, a, b, ctx)[0]
