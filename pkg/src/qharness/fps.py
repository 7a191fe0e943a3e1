"""Exact truncated power series in q with rational coefficients."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import NonIntegralExponent, ZeroConstantTerm


@dataclass(frozen=True)
class QSeries:
    """``sum_{j <= order} coeffs[j] q^j``, exact."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order: int) -> "QSeries":
        return cls([c] + [0] * order)

    @classmethod
    def monomial(cls, e: int, order: int, c=1) -> "QSeries":
        out = [0] * (order + 1)
        if e <= order:
            out[e] = c
        return cls(out)

    def truncate(self, order: int) -> "QSeries":
        return self if order >= self.order else QSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        return qs_arith("add", self, other)

    def __sub__(self, other):
        return qs_arith("sub", self, other)

    def __mul__(self, other):
        return qs_arith("mul", self, other)

    def __truediv__(self, other):
        return qs_arith("div", self, other)

    def first_difference(self, other: "QSeries"):
        """Index of the first unequal coefficient, or ``None``."""
        for j, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return j
        return None


def qs_arith(op: str, a: QSeries, b: QSeries) -> QSeries:
    """Exact ``add``, ``sub``, ``mul`` or ``div`` truncated to the smaller order."""
    n = min(a.order, b.order)
    x, y = a.coeffs, b.coeffs
    if op == "add":
        return QSeries(x[k] + y[k] for k in range(n + 1))
    if op == "sub":
        return QSeries(x[k] - y[k] for k in range(n + 1))
    if op == "mul":
        return QSeries(sum(x[i] * y[k - i] for i in range(k + 1)) for k in range(n + 1))
    if op == "div":
        if y[0] == 0:
            raise ZeroConstantTerm("series division by a vanishing constant term")
        out = []
        for k in range(n + 1):
            acc = x[k] - sum(y[i] * out[k - i] for i in range(1, k + 1))
            out.append(acc / y[0])
        return QSeries(out)
    raise ValueError(f"unknown op {op!r}")


# in-place helpers on coefficient lists; each is O(order)

def _mul_binomial(c: list, e: int, sign: int = 1):
    """``c *= (1 - sign q^e)``."""
    for k in range(len(c) - 1, e - 1, -1):
        c[k] -= sign * c[k - e]


def _div_binomial(c: list, e: int, sign: int = 1):
    """``c /= (1 - sign q^e)``; requires ``e >= 1``."""
    for k in range(e, len(c)):
        c[k] += sign * c[k - e]


def euler_product(a_exp: int, b_exp: int, order: int, inverted: bool = False) -> QSeries:
    """``(q^a; q^b)_inf`` or its reciprocal, exact to ``q^order``."""
    if a_exp < 1 or b_exp < 1:
        raise ValueError("need a_exp >= 1 and b_exp >= 1 so the constant term is 1")
    c = [Fraction(0)] * (order + 1)
    c[0] = Fraction(1)
    e = a_exp
    while e <= order:
        (_div_binomial if inverted else _mul_binomial)(c, e)
        e += b_exp
    return QSeries(c)


def euler_products(factors: Sequence, order: int) -> QSeries:
    """Product of ``euler_product`` terms; each factor is ``(a, b, inverted)``."""
    c = [Fraction(0)] * (order + 1)
    c[0] = Fraction(1)
    for a, b, inverted in factors:
        e = a
        while e <= order:
            (_div_binomial if inverted else _mul_binomial)(c, e)
            e += b
    return QSeries(c)


def _factor(f):
    a, b, count, *rest = f
    return a, b, count, (rest[0] if rest else 1)


def _term_series(num_exp: int, factors: Sequence, order: int, coeff=1) -> QSeries:
    c = [Fraction(0)] * (order + 1)
    if num_exp <= order:
        c[num_exp] = Fraction(coeff)
    for f in factors:
        a, b, count, sign = _factor(f)
        for k in range(count):
            e = a + k * b
            if e == 0:
                raise ZeroConstantTerm("a denominator factor 1 - q^0 vanishes")
            if e > order:
                break
            _div_binomial(c, e, sign)
    return QSeries(c)


def pochhammer_term_sum(terms, order: int) -> QSeries:
    """Exact sum of ``q^num_exp / prod (sign q^a; q^b)_count`` terms.

    ``terms`` is a list of ``(num_exp, factors)`` pairs or a function
    ``n -> (num_exp, factors)``; with a function, summation stops at the first
    ``n`` whose exponent exceeds ``order`` (exponents must increase).  Each
    factor is ``(a, b, count)`` or ``(a, b, count, sign)``, so ``(-q;q)_m`` is
    ``(1, 1, m, -1)``.
    """
    total = [Fraction(0)] * (order + 1)

    def add(spec):
        num_exp, factors, *rest = spec
        coeff = rest[0] if rest else 1
        for k, v in enumerate(_term_series(num_exp, factors, order, coeff).coeffs):
            total[k] += v

    if callable(terms):
        n = 0
        while True:
            spec = terms(n)
            if spec[0] > order:
                break
            add(spec)
            n += 1
    else:
        for spec in terms:
            add(spec)
    return QSeries(total)


def theta_sum(A, B, order: int) -> QSeries:
    """``sum_{n in Z} (-1)^n q^(A n^2 + B n)`` truncated at ``q^order``."""
    A, B = Fraction(A), Fraction(B)
    if A <= 0:
        raise ValueError("A must be positive")
    c = [Fraction(0)] * (order + 1)
    reach = int(math.isqrt(int(order / A) + 1) + abs(B) / A) + 2
    for n in range(-reach, reach + 1):
        e = A * n * n + B * n
        if e.denominator != 1:
            raise NonIntegralExponent(f"A n^2 + B n = {e} is not an integer at n={n}")
        if e > order:
            continue
        if e < 0:
            raise ValueError(f"negative exponent {e} at n={n}")
        c[int(e)] += -1 if n % 2 else 1
    return QSeries(c)
