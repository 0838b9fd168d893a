"""Density estimators for sets of integers.

Empirical counts, sliding-window (uniform density) scans and exponential
estimates work on any membership predicate; predicates with a ``mask(N)``
method are evaluated in one vectorized pass. Analytic densities come from
truncated Euler products whose truncation error is bounded explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .families import G3, mask_a3, member_e3, excluded_exponents
from .numtheory import exponent_gcd, integer_root, nth_primes, primes_array, zeta

MAX_ANALYTIC_LEVEL = 4
# exponents beyond this contribute < 2**-64 per prime
EXPONENT_CUTOFF = 64
MAX_PRIME_BOUND = 5 * 10**7


@dataclass(frozen=True)
class WindowScanResult:
    window: int
    range_max: int
    min_count: int
    max_count: int
    argmin_start: int
    argmax_start: int

    @property
    def lower_ratio(self) -> float:
        return self.min_count / self.window

    @property
    def upper_ratio(self) -> float:
        return self.max_count / self.window


@dataclass(frozen=True)
class DensityReport:
    set_id: str
    N: int
    count: int

    @property
    def asymptotic_estimate(self) -> Fraction:
        return Fraction(self.count, self.N)

    @property
    def exponential_estimate(self) -> Optional[float]:
        if self.count < 1 or self.N < 2:
            return None
        return exponential_estimate(self.count, self.N)


@dataclass(frozen=True)
class AnalyticDensity:
    """An Euler-product evaluation and the parameters that certify it."""

    value: float
    eps: float
    error_bound: float
    provenance: dict = field(default_factory=dict)

    def __float__(self) -> float:
        return self.value


def membership_mask(pred: Callable[[int], bool], N: int) -> np.ndarray:
    """Boolean array over ``0..N`` for ``pred``."""
    mask = getattr(pred, "mask", None)
    if mask is not None:
        return np.asarray(mask(N), dtype=bool)
    return np.fromiter((bool(pred(n)) for n in range(N + 1)), dtype=bool, count=N + 1)


def count_members(pred, N: int, start: int = 1) -> int:
    """``|{start <= n <= N : pred(n)}|``."""
    if N < start:
        return 0
    return int(membership_mask(pred, N)[start:].sum())


def density_report(set_id: str, pred, N: int) -> DensityReport:
    return DensityReport(set_id, N, count_members(pred, N))


def uniform_scan(pred, s: int, range_max: int) -> WindowScanResult:
    """Extreme member counts over windows ``(n, n + s]`` with ``0 <= n <= range_max - s``."""
    if s < 1 or range_max < s:
        raise ValueError(f"uniform_scan needs 1 <= s <= range_max (s={s}, range_max={range_max})")
    mask = membership_mask(pred, range_max)
    mask[0] = False
    prefix = np.concatenate(([0], np.cumsum(mask[1:], dtype=np.int64)))
    counts = prefix[s:] - prefix[: len(prefix) - s]
    lo, hi = int(np.argmin(counts)), int(np.argmax(counts))
    return WindowScanResult(s, range_max, int(counts[lo]), int(counts[hi]), lo, hi)


def exponential_estimate(count: int, N: int) -> float:
    if count < 1:
        raise ValueError("exponential estimate undefined for an empty count")
    if N < 2:
        raise ValueError("exponential estimate needs N >= 2")
    return math.log(count) / math.log(N)


def excluded_e3_count(N: int) -> int:
    """Number of ``n <= N`` outside ``E3``, by enumerating perfect powers.

    An excluded ``n`` has exponent gcd outside ``G3``; the smallest such gcd
    is 4, so every excluded ``n`` is ``b**k`` for some ``b >= 2``, ``k >= 4``.
    """
    if N < 16:
        return 0
    seen = set()
    for b in range(2, integer_root(N, 4) + 1):
        v = b**4
        while v <= N:
            seen.add(v)
            v *= b
    # b**k has exponent gcd k * gcd(b); dedupe first, then test each once
    return sum(1 for n in seen if not G3(exponent_gcd(n)))


def brute_excluded_e3_count(N: int) -> int:
    return sum(1 for n in range(1, N + 1) if not member_e3(n))


# -- analytic densities -------------------------------------------------------


def analytic_density_g3(eps: float = 1e-6) -> AnalyticDensity:
    """``(1/zeta(2)) * prod_{i>=1} zeta(3**i) / zeta(2 * 3**i)``."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    z2 = zeta(2, eps / 8)
    lo = 1 / z2.upper
    hi = 1 / z2.lower
    i = 1
    while True:
        num = zeta(3**i, eps / 8)
        den = zeta(2 * 3**i, eps / 8)
        lo *= num.lower / den.upper
        hi *= num.upper / den.lower
        if abs(num.value / den.value - 1) < eps / 4:
            break
        i += 1
    # remaining factors are in [1, zeta(3**j)] for j > i
    tail = 0.0
    j = i + 1
    while True:
        term = 2.0 ** (1 - 3**j)
        tail += term
        if term < 1e-300 or j > i + 20:
            break
        j += 1
    hi *= math.exp(tail)
    value = (lo + hi) / 2
    err = (hi - lo) / 2
    return AnalyticDensity(
        value=value,
        eps=eps,
        error_bound=err,
        provenance={"eps": eps, "zeta_eps": eps / 8, "factors": i, "tail_bound": tail},
    )


def _tail_sum_bound(P: int, e_min: int) -> float:
    """Upper bound on ``sum_{n > P} n**-e_min`` by the integral from ``P``."""
    return P ** (1 - e_min) / (e_min - 1)


def analytic_density_s(level: int, eps: float = 1e-5) -> AnalyticDensity:
    """Euler product for ``S(level)``, ``2 <= level <= 4``.

    Each prime contributes ``1 - sum over excluded b of (p**-b - p**-(b+1))``
    where ``b`` runs over exponents missing from ``S(level - 1)``. Primes
    above ``P`` lower the product by at most ``sum_{n>P} n**-e_min``.
    """
    if not 2 <= level <= MAX_ANALYTIC_LEVEL:
        raise ValueError(f"analytic_density_s supports levels 2..{MAX_ANALYTIC_LEVEL}, got {level}")
    if not eps > 0:
        raise ValueError("eps must be positive")
    excluded = np.array(excluded_exponents(level - 1, EXPONENT_CUTOFF), dtype=np.float64)
    e_min = int(excluded[0])
    P = 2
    while _tail_sum_bound(P, e_min) >= eps / 2:
        P *= 2
        if P > MAX_PRIME_BOUND:
            raise ArithmeticError(f"eps={eps} needs primes beyond {MAX_PRIME_BOUND}")
    primes = primes_array(P).astype(np.float64)
    inv = 1.0 / primes
    deficit = np.zeros_like(primes)
    for b in excluded:
        deficit += inv**b * (1.0 - inv)
    log_prod = math.fsum(np.log1p(-deficit).tolist())
    value = math.exp(log_prod)
    tail = _tail_sum_bound(P, e_min)
    # dropped exponents above the cutoff and float rounding
    slack = 2.0**-EXPONENT_CUTOFF + 4 * len(primes) * 2.0**-53
    return AnalyticDensity(
        value=value,
        eps=eps,
        error_bound=tail + slack,
        provenance={
            "eps": eps,
            "prime_bound": P,
            "primes_used": len(primes),
            "exponent_bound": EXPONENT_CUTOFF,
            "least_excluded_exponent": e_min,
            "tail_bound": tail,
        },
    )


def t_i_density(i: int) -> float:
    """Proportion of integers in ``T_i``: not exactly divisible by ``p_j**b``
    for ``j <= i`` and any ``b <= i`` outside ``A3``."""
    if i < 1:
        raise ValueError("i must be >= 1")
    a3 = mask_a3(i)
    bad = [b for b in range(i + 1) if not a3[b]]
    prod = 1.0
    for p in nth_primes(i):
        prod *= 1 - math.fsum(p**-b - p ** -(b + 1) for b in bad)
    return prod


def r_i_density(i: int) -> float:
    """``prod_{j<=i} (1 - 1/p_j + 1/p_j**2)``."""
    if i < 1:
        raise ValueError("i must be >= 1")
    prod = 1.0
    for p in nth_primes(i):
        prod *= 1 - 1 / p + 1 / p**2
    return prod


def kfree_density(k: int, eps: float = 1e-9) -> float:
    if k < 2:
        raise ValueError("k must be >= 2")
    return 1 / zeta(k, eps / 2).value


def b_m_density(m: int, eps: float = 1e-9) -> float:
    """Density of integers whose largest prime exponent is exactly ``m``."""
    if m < 2:
        raise ValueError("m must be >= 2")
    return 1 / zeta(m + 1, eps / 4).value - 1 / zeta(m, eps / 4).value
