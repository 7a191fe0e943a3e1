"""Deterministic parameter sampling with rejection on joint constraints."""
from __future__ import annotations

import cmath
import hashlib
import math
import random
from dataclasses import dataclass, field
from typing import Callable

Q_CHOICES = (0.2, 0.35, 0.5, 0.65, 0.8)

# any required pochhammer factor smaller than this rejects the sample
MIN_FACTOR = 1e-6

MAX_REJECTIONS = 20000


def rng_for(seed: int, check_id: str) -> random.Random:
    """An RNG stream that depends only on the suite seed and the entry id."""
    digest = hashlib.sha256(f"{seed}/{check_id}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def cplx(rng: random.Random, lo: float, hi: float) -> complex:
    """Modulus uniform in ``[lo, hi]``, argument uniform in ``[0, 2 pi)``."""
    r = rng.uniform(lo, hi)
    return cmath.rect(r, rng.uniform(0.0, 2.0 * math.pi))


def real(rng: random.Random, lo: float, hi: float) -> float:
    return rng.uniform(lo, hi)


def seq(rng: random.Random, n: int, hi: float = 1.0) -> list:
    """``n`` complex numbers with modulus at most ``hi``."""
    return [cplx(rng, 0.0, hi) for _ in range(n)]


@dataclass(frozen=True)
class Box:
    kind: str  # c (complex), r (real), i (integer), t (angle)
    lo: float = 0.0
    hi: float = 1.0

    def draw(self, rng: random.Random):
        if self.kind == "c":
            return cplx(rng, self.lo, self.hi)
        if self.kind == "r":
            return real(rng, self.lo, self.hi)
        if self.kind == "i":
            return rng.randint(int(self.lo), int(self.hi))
        if self.kind == "t":
            return rng.uniform(0.0, 2.0 * math.pi)
        raise ValueError(self.kind)


def C(lo: float, hi: float) -> Box:
    return Box("c", lo, hi)


def R(lo: float, hi: float) -> Box:
    return Box("r", lo, hi)


def I(lo: int, hi: int) -> Box:
    return Box("i", lo, hi)


THETA = Box("t")


@dataclass(frozen=True)
class Sampler:
    """Per-parameter boxes, joint constraints and optional extra draws.

    ``extra(rng, params)`` may add derived random data (for example the
    arbitrary sequences of the terminating transformations).  Constraints
    see the full parameter dict, including ``q``.
    """

    boxes: dict
    constraints: tuple = ()
    extra: Callable | None = None
    q_choices: tuple = Q_CHOICES

    def __call__(self, rng: random.Random) -> dict:
        for _ in range(MAX_REJECTIONS):
            p = {"q": rng.choice(self.q_choices)}
            for name, box in self.boxes.items():
                p[name] = box.draw(rng)
            if self.extra is not None:
                p.update(self.extra(rng, p))
            try:
                good = all(c(p) for c in self.constraints)
            except ZeroDivisionError:
                good = False
            if good:
                return p
        raise RuntimeError("sampler rejected every draw; the domain is empty or too thin")


def bounded(limit: float, *exprs: Callable) -> Callable:
    """Constraint: every expression has modulus at most ``limit``."""
    return lambda p: all(abs(e(p)) <= limit for e in exprs)


def poch_safe(*exprs: Callable, n: int | None = None) -> Callable:
    """Constraint: ``|1 - a q^k| >= MIN_FACTOR`` for the listed bases.

    ``n`` limits ``k`` to ``0..n-1``; by default every ``k`` until
    ``|a| q^k < 1/2``, past which no factor can vanish.
    """

    def check(p):
        q = p["q"]
        for e in exprs:
            a = e(p)
            k = 0
            while (n is None and abs(a) * q ** k >= 0.5) or (n is not None and k < n):
                if abs(1 - a * q ** k) < MIN_FACTOR * 1e3:
                    return False
                k += 1
        return True

    return check
