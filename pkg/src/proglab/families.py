"""Closed-form membership for the greedy progression-free sets.

``A3``: nonnegative integers with no ternary digit 2.
``G3``: positive integers whose prime exponents all lie in ``A3`` (Rankin).
``E3``: 1 and every ``n`` whose exponent gcd lies in ``G3``.
``S(level)``: ``S(1) = A3``; ``S(k)`` takes exponents from ``S(k-1)``.

For levels >= 2 only exponents that actually occur are constrained, so 1 is
always a member and 0 is a member of ``A3`` only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .numtheory import exponent_gcd, exponent_rows, factorize, ternary_digits

FIRST_EXCLUDED_SEARCH = 2 * 65536
MAX_FIRST_EXCLUDED_LEVEL = 4


def member_a3(n: int) -> bool:
    if n < 0:
        return False
    return 2 not in ternary_digits(n)


@lru_cache(maxsize=None)
def _exponent_in(e: int, level: int) -> bool:
    return member_s(e, level)


def member_s(n: int, level: int) -> bool:
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    if level == 1:
        return member_a3(n)
    if n < 1:
        return False
    return all(_exponent_in(e, level - 1) for e in factorize(n).exponents)


def member_g3(n: int) -> bool:
    return member_s(n, 2)


def member_e3(n: int) -> bool:
    if n < 1:
        return False
    if n == 1:
        return True
    return member_g3(exponent_gcd(n))


def excluded_exponents(level: int, bound: int) -> list[int]:
    """Every ``e`` in ``[1, bound]`` that is not in ``S(level)``."""
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    return np.flatnonzero(~mask_s(level, bound)[1:]).__add__(1).tolist()


def first_excluded(level: int) -> int:
    if not 1 <= level <= MAX_FIRST_EXCLUDED_LEVEL:
        raise ValueError(
            f"first_excluded supports levels 1..{MAX_FIRST_EXCLUDED_LEVEL}, got {level}"
        )
    start = 0 if level == 1 else 1
    for n in range(start, FIRST_EXCLUDED_SEARCH + 1):
        if not member_s(n, level):
            return n
    raise ArithmeticError(
        f"no excluded element of S({level}) up to {FIRST_EXCLUDED_SEARCH}"
    )


# -- vectorized masks over 0..N -------------------------------------------------


def mask_a3(N: int) -> np.ndarray:
    n = np.arange(N + 1, dtype=np.int64)
    ok = np.ones(N + 1, dtype=bool)
    while True:
        live = n > 0
        if not live.any():
            break
        ok &= n % 3 != 2
        n //= 3
    return ok


def _allowed_exponents(level: int, max_exp: int) -> np.ndarray:
    allowed = mask_s(level, max_exp)
    allowed[0] = True
    return allowed


def mask_s(level: int, N: int) -> np.ndarray:
    """Boolean array ``m`` with ``m[n] == member_s(n, level)`` for ``0 <= n <= N``."""
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    if level == 1:
        return mask_a3(N)
    rows = exponent_rows(N)
    allowed = _allowed_exponents(level - 1, max(int(rows.max()), 1))
    out = allowed[rows].all(axis=0)
    out[0] = False
    return out


def mask_g3(N: int) -> np.ndarray:
    return mask_s(2, N)


def mask_e3(N: int) -> np.ndarray:
    rows = exponent_rows(N).astype(np.int64)
    g = np.gcd.reduce(rows, axis=0)
    allowed = mask_g3(max(int(g.max()), 1))
    out = allowed[g] | (g == 0)
    out[0] = False
    return out


@dataclass(frozen=True)
class SetFamily:
    """A characterized set, usable as a membership predicate.

    ``kind`` is one of ``A3``, ``G3``, ``E3``, ``S``; ``level`` matters for ``S``.
    """

    kind: str
    level: int = 0

    def __post_init__(self):
        if self.kind not in ("A3", "G3", "E3", "S"):
            raise ValueError(f"unknown set family {self.kind!r}")
        if self.kind == "S" and self.level < 1:
            raise ValueError("S family needs level >= 1")

    @property
    def name(self) -> str:
        return f"S{self.level}" if self.kind == "S" else self.kind

    def __call__(self, n: int) -> bool:
        if self.kind == "A3":
            return member_a3(n)
        if self.kind == "G3":
            return member_g3(n)
        if self.kind == "E3":
            return member_e3(n)
        return member_s(n, self.level)

    def mask(self, N: int) -> np.ndarray:
        if self.kind == "A3":
            return mask_a3(N)
        if self.kind == "G3":
            return mask_g3(N)
        if self.kind == "E3":
            return mask_e3(N)
        return mask_s(self.level, N)


A3 = SetFamily("A3")
G3 = SetFamily("G3")
E3 = SetFamily("E3")


def S(level: int) -> SetFamily:
    return SetFamily("S", level)
