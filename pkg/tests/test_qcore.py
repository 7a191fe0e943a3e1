from __future__ import annotations

import cmath
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qharness import DivisionByZero, QContext, qbinomial, qpoch_finite, qpoch_infinite, qpoch_multi
from qharness.qcore import INF, qbinomial_row

Q = st.sampled_from([0.2, 0.35, 0.5, 0.65, 0.8])


def cplx(max_mod=2.0):
    return st.builds(
        lambda r, t: r * cmath.exp(1j * t),
        st.floats(0.0, max_mod),
        st.floats(0.0, 2 * cmath.pi),
    )


def rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def exact_qbinomial(n, k, q):
    """Ratio of exact finite products over the rationals."""
    def qq(m):
        out = Fraction(1)
        for j in range(1, m + 1):
            out *= 1 - q ** j
        return out

    return qq(n) / (qq(k) * qq(n - k))


# -- context -------------------------------------------------------------------

@pytest.mark.parametrize("q", [0.0, 1.0, -0.5, 1.5])
def test_context_rejects_q_outside_unit_interval(q):
    with pytest.raises(ValueError):
        QContext(q)


def test_context_rejects_complex_q():
    with pytest.raises(ValueError):
        QContext(0.5 + 0.1j)


def test_context_mp_scalar_type():
    ctx = QContext(0.5, dps=30)
    assert isinstance(ctx.scalar(0.25), ctx.mp.mpc)
    assert ctx.scalar(Fraction(1, 3)).real == ctx.mp.mpf(1) / 3


# -- examples ----------------------------------------------------------------------

def test_finite_examples():
    ctx = QContext(0.5)
    assert qpoch_finite(0.5, ctx, 0) == 1
    assert qpoch_finite(0.5, ctx, 1) == pytest.approx(0.5)
    # 2 q = 1 kills the second factor
    assert qpoch_finite(2, ctx, 2) == 0


def test_negative_index():
    ctx = QContext(0.5)
    a = 0.3 + 0.2j
    for n in range(1, 6):
        expect = 1 / qpoch_finite(a * 0.5 ** (-n), ctx, n)
        assert rel(qpoch_finite(a, ctx, -n), expect) < 1e-14


def test_negative_index_zero_factor():
    ctx = QContext(0.5)
    with pytest.raises(DivisionByZero):
        qpoch_finite(0.25, ctx, -2)


def test_infinite_example():
    ctx = QContext(0.5)
    assert abs(qpoch_infinite(0.5, ctx) - 0.2887880950866024) < 1e-12
    assert qpoch_infinite(0, ctx) == 1


@pytest.mark.parametrize("q", [0.2, 0.5, 0.8])
@pytest.mark.parametrize("a", [0.3, -0.9, 0.7 - 0.6j, 1.7j])
def test_infinite_matches_mpmath(q, a):
    ctx = QContext(q)
    expect = complex(mpmath.qp(a, q))
    assert rel(qpoch_infinite(a, ctx), expect) < 1e-13


def test_infinite_mp_precision():
    # the tail certificate follows tail_tol, not dps
    ctx = QContext(0.5, dps=40, tail_tol=1e-36)
    with mpmath.workdps(40):
        expect = mpmath.qp(mpmath.mpf("0.3"), mpmath.mpf("0.5"))
    assert abs(qpoch_infinite(ctx.real("0.3"), ctx) - expect) < mpmath.mpf(10) ** -30


def test_multi_examples():
    ctx = QContext(0.5)
    assert qpoch_multi([0.5, 0.25], ctx, 2) == pytest.approx(0.24609375, abs=1e-15)
    assert qpoch_multi([0, 0, 0], ctx, INF) == 1
    with pytest.raises(ValueError):
        qpoch_multi([], ctx, 3)


def test_qbinomial_examples():
    ctx = QContext(0.5)
    assert qbinomial(4, 2, ctx) == pytest.approx(2.1875, abs=1e-15)
    assert qbinomial(3, 5, ctx) == 0
    assert qbinomial(3, -1, ctx) == 0
    for n in range(10):
        assert qbinomial(n, 0, ctx) == 1
        assert qbinomial(n, n, ctx) == 1


@pytest.mark.parametrize("q", [Fraction(1, 5), Fraction(1, 2), Fraction(4, 5)])
def test_qbinomial_matches_exact_rationals(q):
    ctx = QContext(float(q))
    for n in range(25):
        row = qbinomial_row(n, ctx)
        for k in range(n + 1):
            assert rel(row[k], float(exact_qbinomial(n, k, q))) < 1e-13


# -- properties ------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(q=Q, n=st.integers(2, 30), data=st.data())
def test_pascal_rule(q, n, data):
    ctx = QContext(q)
    k = data.draw(st.integers(1, n - 1))
    lhs = qbinomial(n, k, ctx)
    rhs = qbinomial(n - 1, k - 1, ctx) + q ** k * qbinomial(n - 1, k, ctx)
    assert rel(lhs, rhs) < 1e-12


@settings(max_examples=60, deadline=None)
@given(q=Q, n=st.integers(1, 30), data=st.data())
def test_adjacent_ratio(q, n, data):
    ctx = QContext(q)
    k = data.draw(st.integers(1, n))
    lhs = qbinomial(n, k, ctx) * (1 - q ** k)
    rhs = qbinomial(n, k - 1, ctx) * (1 - q ** (n - k + 1))
    assert rel(lhs, rhs) < 1e-12


@settings(max_examples=80, deadline=None)
@given(q=Q, a=cplx(2.0), n=st.integers(0, 20), m=st.integers(0, 20))
def test_finite_splitting(q, a, n, m):
    ctx = QContext(q)
    lhs = qpoch_finite(a, ctx, n + m)
    rhs = qpoch_finite(a, ctx, n) * qpoch_finite(a * q ** n, ctx, m)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


@settings(max_examples=80, deadline=None)
@given(q=Q, a=cplx(2.0), n=st.integers(0, 20))
def test_infinite_splitting(q, a, n):
    ctx = QContext(q)
    lhs = qpoch_infinite(a, ctx)
    rhs = qpoch_finite(a, ctx, n) * qpoch_infinite(a * q ** n, ctx)
    assert abs(lhs - rhs) <= 8 * ctx.tail_tol * max(1.0, abs(lhs))
