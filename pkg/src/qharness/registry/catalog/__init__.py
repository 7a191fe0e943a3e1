"""The built-in identity catalog."""
from __future__ import annotations

from functools import lru_cache
from importlib import import_module

_MODULES = (
    "polynomials",
    "summations",
    "quadratic",
    "reciprocity",
    "integrals",
    "operators",
    "formal",
    "derivatives",
    "controls",
)


@lru_cache(maxsize=None)
def _load() -> tuple:
    checks = []
    for name in _MODULES:
        checks.extend(import_module(f"{__name__}.{name}").CHECKS)
    ids = [c.id for c in checks]
    dup = {i for i in ids if ids.count(i) > 1}
    if dup:
        raise RuntimeError(f"duplicate catalog ids: {sorted(dup)}")
    return tuple(checks)


def builtin_catalog() -> list:
    """Every entry, in a fixed order."""
    return list(_load())
