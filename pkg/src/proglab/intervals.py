"""Block construction of a geometric-progression-free set with high upper density.

A block anchored at ``N`` is the union of six intervals ``(N/lo, N/hi]``.
Blocks are placed at anchors ``N_i = 48**2 * N_{i-1}**2 / N_1``. Endpoints are
exact rationals; integer membership never touches floating point.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .config import threads

# (N/a, N/b] for each (a, b)
BLOCK_DIVISORS = ((48, 45), (40, 36), (32, 27), (24, 12), (9, 8), (4, 1))
MIN_ANCHOR = 48
DEFAULT_ANCHOR = 4320
VERIFY_BOUND = 10**6
UNION_BLOCKS = 3


@dataclass(frozen=True)
class IntervalUnion:
    """Disjoint ascending intervals ``(lo, hi]`` with rational endpoints."""

    anchor: int
    intervals: tuple[tuple[Fraction, Fraction], ...]

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), Fraction(0))

    def density(self) -> Fraction:
        return self.measure() / self.anchor

    def __contains__(self, n: int) -> bool:
        return any(lo < n <= hi for lo, hi in self.intervals)

    def integer_count(self) -> int:
        # integers in (lo, hi] number floor(hi) - floor(lo)
        return sum(int(hi // 1) - int(lo // 1) for lo, hi in self.intervals)

    def mask(self, top: int) -> np.ndarray:
        out = np.zeros(top + 1, dtype=bool)
        for lo, hi in self.intervals:
            a = int(lo // 1) + 1
            b = min(int(hi // 1), top)
            if a <= b:
                out[a : b + 1] = True
        return out


def s_block(N: int) -> IntervalUnion:
    if N < MIN_ANCHOR:
        raise ValueError(f"anchor must be >= {MIN_ANCHOR}, got {N}")
    return IntervalUnion(
        N, tuple((Fraction(N, a), Fraction(N, b)) for a, b in BLOCK_DIVISORS)
    )


def block_member(n: int, N: int) -> bool:
    if N < MIN_ANCHOR:
        raise ValueError(f"anchor must be >= {MIN_ANCHOR}, got {N}")
    # N/a < n <= N/b  <=>  a*n > N and b*n <= N
    return any(a * n > N and b * n <= N for a, b in BLOCK_DIVISORS)


def next_anchor(N_prev: int, N_1: int) -> int:
    q, r = divmod(48**2 * N_prev**2, N_1)
    if r:
        raise ValueError(f"48^2 * {N_prev}^2 is not divisible by N_1={N_1}")
    return q


def anchors(N_1: int, count: int) -> list[int]:
    out = [N_1]
    while len(out) < count:
        out.append(next_anchor(out[-1], N_1))
    return out


def union_member(n: int, N_1: int = DEFAULT_ANCHOR, blocks: int = UNION_BLOCKS) -> bool:
    """Membership in the union of the first ``blocks`` blocks (at most 3)."""
    if not 1 <= blocks <= UNION_BLOCKS:
        raise ValueError(f"union membership supports 1..{UNION_BLOCKS} blocks")
    return any(block_member(n, N) for N in anchors(N_1, blocks))


def _first_progression_for_ratio(mask: np.ndarray, r: int) -> Optional[tuple[int, int, int]]:
    top = len(mask) - 1
    M = top // (r * r)
    if M < 1:
        return None
    hit = np.flatnonzero(mask[1 : M + 1] & mask[r : r * M + 1 : r] & mask[r * r : r * r * M + 1 : r * r])
    if not hit.size:
        return None
    a = int(hit[0]) + 1
    return a, a * r, a * r * r


def find_geometric_progression(mask: np.ndarray) -> Optional[tuple[int, int, int]]:
    """Some ``(a, ar, ar**2)`` inside a value-indexed mask, smallest ratio first."""
    top = len(mask) - 1
    ratios = list(range(2, int(top**0.5) + 2))
    ratios = [r for r in ratios if r * r <= top]
    with ThreadPoolExecutor(max_workers=threads()) as pool:
        results = list(pool.map(lambda r: _first_progression_for_ratio(mask, r), ratios))
    for res in results:
        if res is not None:
            return res
    return None


def verify_block_free(N: int) -> Optional[tuple[int, int, int]]:
    """Exhaustive search for a geometric progression with integer ratio in one block."""
    if N > VERIFY_BOUND:
        raise ValueError(f"verify_block_free is brute force; N must be <= {VERIFY_BOUND}")
    return find_geometric_progression(s_block(N).mask(N))
