from __future__ import annotations

import cmath
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qharness import (
    Divergent,
    HyperSpec,
    LauricellaSpec,
    QContext,
    ZeroDenominator,
    lauricella_sum,
    phi,
    phi_eval,
    phi_terminating,
    qpoch_finite,
    qpoch_infinite,
)
from qharness.qhyper import lauricella_cap, lauricella_tail_bound, q_neg_power, terminating_index
from qharness.registry.catalog.summations import _t5_lhs, _t5_rhs

Q = st.sampled_from([0.2, 0.35, 0.5, 0.65, 0.8])


def cplx(lo, hi):
    return st.builds(lambda r, t: r * cmath.exp(1j * t), st.floats(lo, hi), st.floats(0.0, 2 * cmath.pi))


def rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def fin(ctx, n, *xs):
    out = 1
    for x in xs:
        out *= qpoch_finite(x, ctx, n)
    return out


# -- examples ----------------------------------------------------------------------

def test_zero_argument():
    ctx = QContext(0.5)
    assert phi([0.3, 0.7], [0.2], 0, ctx) == 1


def test_one_phi_zero_is_reciprocal_product():
    ctx = QContext(0.5)
    assert rel(phi([0], [], 0.3, ctx), 1 / qpoch_infinite(0.3, ctx)) < 1e-10


def test_unit_upper_parameter():
    ctx = QContext(0.5)
    assert phi([1, 0.4], [0.7], 0.9, ctx) == 1
    # terminates even where the nonterminating series diverges
    assert phi([1, 0.4, 0.2], [0.7], 3.0, ctx) == 1


@pytest.mark.parametrize("q", [0.2, 0.5, 0.8])
@pytest.mark.parametrize(
    "upper,lower,z",
    [
        ([0.5, 0.3], [0.2], 0.4),
        ([0.3 + 0.4j, -0.6], [0.1j], 0.7j),
        ([0.5], [0.2, 0.3], 2.5),
        ([], [0.4], -3.0),
        ([0.5, 0.25, 0.9], [0.1, -0.3], 0.6 - 0.2j),
    ],
)
def test_matches_mpmath_qhyper(q, upper, lower, z):
    ctx = QContext(q)
    expect = complex(mpmath.qhyper(upper, lower, q, z))
    assert rel(phi(upper, lower, z, ctx), expect) < 1e-12


def test_pfaff_saalschutz_example():
    q, al, c, d, n = 0.4, 0.7, 0.3, 0.2, 3
    ctx = QContext(q)
    val = phi_terminating(HyperSpec([q ** -n, al * q ** n, al * c * d / q], [al * c, al * d], q, ctx), n)
    closed = fin(ctx, n, q / c, q / d) / fin(ctx, n, al * c, al * d) * (al * c * d / q) ** n
    assert rel(val, closed) < 1e-10


def test_chu_vandermonde_example():
    # 2phi1(q^-n, a; c; q, q) = (c/a)_n / (c)_n a^n
    rng = random.Random(4)
    q, n = 0.5, 4
    ctx = QContext(q)
    for _ in range(10):
        a = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        val = phi_terminating(HyperSpec([q ** -n, a], [c], q, ctx), n)
        assert rel(val, fin(ctx, n, c / a) / fin(ctx, n, c) * a ** n) < 1e-10


def test_mp_precision_path():
    ctx = QContext(0.5, dps=40, tail_tol=1e-38)
    with mpmath.workdps(40):
        expect = mpmath.qhyper([mpmath.mpf("0.3")], [mpmath.mpf("0.6")], mpmath.mpf("0.5"), mpmath.mpf("0.9"))
    assert abs(phi([ctx.real("0.3")], [ctx.real("0.6")], ctx.real("0.9"), ctx) - expect) < mpmath.mpf(10) ** -32


# -- guards ------------------------------------------------------------------------

def test_rejects_divergent_well_poised():
    ctx = QContext(0.5)
    with pytest.raises(Divergent):
        phi([0.3, 0.5], [0.2], 1.0, ctx)


def test_rejects_too_many_upper_parameters():
    ctx = QContext(0.5)
    with pytest.raises(Divergent):
        phi([0.3, 0.5, 0.7], [0.2], 0.1, ctx)


def test_zero_denominator():
    ctx = QContext(0.5)
    # lower parameter q^-2 vanishes at n = 2
    with pytest.raises(ZeroDenominator):
        phi([0.3], [4.0], 0.1, ctx)


def test_terminating_requires_matching_parameter():
    ctx = QContext(0.5)
    with pytest.raises(ValueError):
        phi_terminating(HyperSpec([0.3], [0.2], 0.5, ctx), 3)


def test_terminating_index_detection():
    ctx = QContext(0.5)
    for m in (0, 1, 7, 40):
        assert terminating_index(q_neg_power(m, ctx), ctx) == m
    assert terminating_index(8.0 * (1 + 1e-9), ctx) is None
    assert terminating_index(-8.0, ctx) is None
    assert terminating_index(8.0j, ctx) is None


# -- q-Lauricella ------------------------------------------------------------------

def test_lauricella_zero_arguments():
    ctx = QContext(0.5)
    assert lauricella_sum(LauricellaSpec(0.5, 0.3, (0, 0), (0.2, 0.4), ctx), 10) == 1


def test_lauricella_k1_is_two_phi_one():
    ctx = QContext(0.5)
    spec = LauricellaSpec(0.5, 0.3, (0.4,), (0.7,), ctx)
    cap = lauricella_cap(spec, 1e-15)
    assert rel(lauricella_sum(spec, cap), phi([0.5, 0.7], [0.3], 0.4, ctx)) < 1e-10


def test_lauricella_k2_closed_form():
    q, a, c, x1, x2 = 0.5, 0.5, 0.3, 0.2, 0.1
    ctx = QContext(q)
    spec = LauricellaSpec(a, c, (x1, x2), (0, 0), ctx)
    val = lauricella_sum(spec, lauricella_cap(spec, 1e-15))
    closed = qpoch_infinite(a, ctx) / (qpoch_infinite(c, ctx) * qpoch_infinite(x1, ctx) * qpoch_infinite(x2, ctx))
    closed *= phi([c / a, x1, x2], [0, 0], a, ctx)
    assert rel(val, closed) < 1e-8


def test_lauricella_tail_bound_is_honest():
    ctx = QContext(0.5)
    spec = LauricellaSpec(0.5 + 0.2j, 0.3, (0.6, -0.5j), (0.9, 1.2), ctx)
    ref = lauricella_sum(spec, 400)
    for cap in (5, 10, 20):
        assert abs(lauricella_sum(spec, cap) - ref) <= lauricella_tail_bound(spec, cap)


def test_lauricella_rejects_unit_disc_exit():
    ctx = QContext(0.5)
    with pytest.raises(Divergent):
        lauricella_sum(LauricellaSpec(0.5, 0.3, (1.0,), (0,), ctx), 5)


# -- properties ------------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(q=Q, m=st.integers(0, 6), seed=st.integers(0, 2 ** 32))
def test_five_phi_four_swap_symmetry(q, m, seed):
    rng = random.Random(seed)

    def draw(lo, hi):
        return rng.uniform(lo, hi) * cmath.exp(1j * rng.uniform(0, 2 * cmath.pi))

    p = {"q": q, "m": m, "alpha": draw(0.2, 1.5), "a": draw(0.3, 1.5), "b": draw(0.3, 1.5),
         "beta": draw(0.05, 1.5), "gamma": draw(0.05, 1.5), "c": draw(0.2, 2.0), "d": draw(0.2, 2.0),
         "h": draw(0.2, 2.0), "z": draw(0.05, 1.5)}
    swapped = dict(p, a=p["b"], b=p["a"])
    ctx = QContext(q, dps=40)
    for side in (_t5_lhs, _t5_rhs):
        x, y = side(p, ctx), side(swapped, ctx)
        assert abs(x - y) <= 1e-20 * (1 + abs(x))


@settings(max_examples=40, deadline=None)
@given(q=Q, a=cplx(0.05, 1.5), b=cplx(0.05, 1.5), z=cplx(0.0, 3.0))
def test_tail_stability(q, a, b, z):
    ctx = QContext(q, max_terms=2000)
    wide = QContext(q, max_terms=4000)
    x = phi([a], [b], z, ctx)
    y = phi([a], [b], z, wide)
    assert abs(x - y) <= 4 * ctx.tail_tol * max(1.0, abs(y))


@settings(max_examples=40, deadline=None)
@given(q=Q, m=st.integers(0, 12), a=cplx(0.05, 1.5), b=cplx(0.3, 1.5), z=cplx(0.05, 2.0))
def test_terminating_paths_agree(q, m, a, b, z):
    ctx = QContext(q)
    spec = HyperSpec([q_neg_power(m, ctx), a], [b], z, ctx)
    assert phi_terminating(spec, m) == phi_eval(spec)
