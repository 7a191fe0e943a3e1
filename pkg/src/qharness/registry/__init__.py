"""Identity catalog, sampling and verdicts."""
from .catalog import builtin_catalog
from .model import CheckResult, IdentityCheck, SampleRecord
from .runner import residual, resolve, run_check, run_suite, suite_ok

__all__ = [
    "CheckResult",
    "IdentityCheck",
    "SampleRecord",
    "builtin_catalog",
    "residual",
    "resolve",
    "run_check",
    "run_suite",
    "suite_ok",
]
