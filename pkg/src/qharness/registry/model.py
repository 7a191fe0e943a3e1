"""Catalog entry and result records."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable


MODES = ("numeric", "formal", "derivative")

# acceptance groups; every entry belongs to exactly one
GROUPS = ("formal", "terminating", "nonterminating", "integral", "operator", "derivative", "control")


@dataclass(frozen=True)
class IdentityCheck:
    """A runnable identity: two independent evaluators and a parameter sampler.

    ``lhs`` and ``rhs`` take ``(params, ctx)`` in numeric and derivative mode
    and ``(order,)`` in formal mode.  They may return a scalar or a sequence;
    sequences are compared elementwise.  ``tol=None`` means the run's numeric
    tolerance; a set value is only ever tightened by the run.  ``dps`` is the
    working precision (``None`` for doubles), either fixed or computed from the
    sampled parameters.
    """

    id: str
    paper_ref: str
    mode: str
    group: str
    lhs: Callable
    rhs: Callable
    sampler: Callable | None = None
    tol: float | None = None
    dps: int | Callable[[dict], int | None] | None = None
    expect_fail: bool = False
    max_terms: int = 20000
    tail_tol: float = 1e-15

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"{self.id}: unknown mode {self.mode!r}")
        if self.group not in GROUPS:
            raise ValueError(f"{self.id}: unknown group {self.group!r}")
        if self.mode != "formal" and self.sampler is None:
            raise ValueError(f"{self.id}: numeric entries need a sampler")

    def working_dps(self, params: dict) -> int | None:
        return self.dps(params) if callable(self.dps) else self.dps


@dataclass
class SampleRecord:
    params: dict
    lhs: Any = None
    rhs: Any = None
    residual: float = 0.0
    error: str | None = None


@dataclass
class CheckResult:
    id: str
    paper_ref: str
    mode: str
    group: str
    verdict: str  # pass | fail | error
    max_residual: float
    tol: float
    seed: int
    expect_fail: bool
    samples: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        """Whether this result is what a correct implementation produces."""
        return self.verdict == "fail" if self.expect_fail else self.verdict == "pass"

    @property
    def nsamples(self) -> int:
        return len(self.samples)

    def worst(self) -> SampleRecord | None:
        if not self.samples:
            return None
        errs = [s for s in self.samples if s.error]
        if errs:
            return errs[0]
        return max(self.samples, key=lambda s: s.residual)
