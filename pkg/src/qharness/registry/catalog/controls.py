"""Deliberately wrong entries.  A run in which any of them passes is broken."""
from __future__ import annotations

from ..model import IdentityCheck
from .formal import _mod7, _rs_sum
from .polynomials import CHECKS as _POLY
from .summations import CHECKS as _SUMS
from .summations import _ps_lhs
from ._kit import fin, sc

_GEN_H = next(c for c in _POLY if c.id == "gen-h")
_PFAFF = next(c for c in _SUMS if c.id == "pfaff-saalschutz")


def _scaled_gen_h(p, ctx):
    return _GEN_H.rhs(p, ctx) * (1 + 1e-3)


def _pfaff_wrong_power(p, ctx):
    al, c, d = sc(ctx, p, "alpha c d")
    q, n = ctx.q, p["n"]
    return fin(ctx, n, q / c, q / d) / fin(ctx, n, al * c, al * d) * (al * c * d / q) ** (n + 1)


CHECKS = [
    IdentityCheck(
        id="control-gen-h-scaled",
        paper_ref="negative control: h_n generating function with the product side scaled by 1 + 1e-3",
        mode="numeric",
        group="control",
        lhs=_GEN_H.lhs,
        rhs=_scaled_gen_h,
        sampler=_GEN_H.sampler,
        expect_fail=True,
    ),
    IdentityCheck(
        id="control-pfaff-exponent",
        paper_ref="negative control: q-Pfaff-Saalschutz with (alpha cd/q)^(n+1) in place of ^n",
        mode="numeric",
        group="control",
        lhs=_ps_lhs,
        rhs=_pfaff_wrong_power,
        sampler=_PFAFF.sampler,
        tol=_PFAFF.tol,
        dps=_PFAFF.dps,
        expect_fail=True,
    ),
    IdentityCheck(
        id="control-rs-mismatch",
        paper_ref="negative control: first Rogers-Selberg sum against the second product",
        mode="formal",
        group="control",
        lhs=_rs_sum(2, 0),
        rhs=_mod7(1),
        expect_fail=True,
    ),
]
