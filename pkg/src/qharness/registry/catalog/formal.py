"""Sum-product identities compared as exact power series in q."""
from __future__ import annotations

from fractions import Fraction

from ...fps import euler_products, pochhammer_term_sum, qs_arith, theta_sum
from ..model import IdentityCheck


def _rs_sum(shift, extra):
    """``sum q^(2n^2 + shift n) / ((-q;q)_(2n+extra) (q^2;q^2)_n)``."""

    def lhs(order):
        return pochhammer_term_sum(lambda n: (2 * n * n + shift * n, [(1, 1, 2 * n + extra, -1), (2, 2, n)]), order)

    return lhs


def _mod7(a):
    """``(q^a, q^(7-a), q^7; q^7)_inf / (q^2;q^2)_inf``."""

    def rhs(order):
        return euler_products([(a, 7, False), (7 - a, 7, False), (7, 7, False), (2, 2, True)], order)

    return rhs


def _rs1_theta(order):
    return qs_arith("mul", theta_sum(Fraction(7, 2), Fraction(3, 2), order), euler_products([(2, 2, True)], order))


def _mod14_1(order):
    return pochhammer_term_sum(lambda n: (n * n, [(1, 1, n), (1, 2, n)]), order)


def _mod14_2(order):
    return pochhammer_term_sum(lambda n: (n * n + 2 * n, [(1, 1, n), (1, 2, n + 1)]), order)


def _mod14(a):
    def rhs(order):
        return euler_products([(a, 14, False), (14 - a, 14, False), (14, 14, False), (1, 1, True)], order)

    return rhs


CHECKS = [
    IdentityCheck(
        id="rogers-selberg-1",
        paper_ref="Rogers-Selberg: sum q^(2n^2+2n)/((-q;q)_2n (q^2;q^2)_n) = (q^2, q^5, q^7; q^7)_inf/(q^2;q^2)_inf",
        mode="formal",
        group="formal",
        lhs=_rs_sum(2, 0),
        rhs=_mod7(2),
    ),
    IdentityCheck(
        id="rogers-selberg-2",
        paper_ref="Rogers-Selberg: sum q^(2n^2+2n)/((-q;q)_(2n+1) (q^2;q^2)_n) = (q, q^6, q^7; q^7)_inf/(q^2;q^2)_inf",
        mode="formal",
        group="formal",
        lhs=_rs_sum(2, 1),
        rhs=_mod7(1),
    ),
    IdentityCheck(
        id="rogers-selberg-3",
        paper_ref="Rogers-Selberg: sum q^(2n^2)/((-q;q)_2n (q^2;q^2)_n) = (q^3, q^4, q^7; q^7)_inf/(q^2;q^2)_inf",
        mode="formal",
        group="formal",
        lhs=_rs_sum(0, 0),
        rhs=_mod7(3),
    ),
    IdentityCheck(
        id="rs1-theta",
        paper_ref="first Rogers-Selberg sum as (q^2;q^2)_inf^-1 sum_n (-1)^n q^((7n^2+3n)/2)",
        mode="formal",
        group="formal",
        lhs=_rs_sum(2, 0),
        rhs=_rs1_theta,
    ),
    IdentityCheck(
        id="rogers-mod14-1",
        paper_ref="Rogers: sum q^(n^2)/((q;q)_n (q;q^2)_n) = (q^6, q^8, q^14; q^14)_inf/(q;q)_inf",
        mode="formal",
        group="formal",
        lhs=_mod14_1,
        rhs=_mod14(6),
    ),
    IdentityCheck(
        id="rogers-mod14-2",
        paper_ref="Rogers: sum q^(n^2+2n)/((q;q)_n (q;q^2)_(n+1)) = (q^2, q^12, q^14; q^14)_inf/(q;q)_inf",
        mode="formal",
        group="formal",
        lhs=_mod14_2,
        rhs=_mod14(2),
    ),
]
