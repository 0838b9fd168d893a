"""Greedy construction of 3-term progression-free sets, and brute-force checks.

A progression for a family ``f_n`` is ``x, f_n(x), f_n(f_n(x))``. Every family
here is strictly increasing on its nondegenerate range, so when candidates
are taken in ascending order a new element can only ever be the last term.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .numtheory import RangeError, factorize, integer_root, power_roots

GREEDY_MAX_LIMIT = 10**8


class Kind(enum.Enum):
    TRANSLATION = "translation"
    DILATION = "dilation"
    EXPONENTIATION = "exponentiation"


@dataclass(frozen=True)
class ProgressionFamily:
    kind: Kind

    @property
    def start(self) -> int:
        return 0 if self.kind is Kind.TRANSLATION else 1

    @property
    def min_param(self) -> int:
        return 1 if self.kind is Kind.TRANSLATION else 2

    def apply(self, x: int, n: int) -> int:
        """``f_n(x)``."""
        if self.kind is Kind.TRANSLATION:
            return x + n
        if self.kind is Kind.DILATION:
            return n * x
        return x**n

    def progression(self, x: int, n: int) -> tuple[int, int, int]:
        y = self.apply(x, n)
        return x, y, self.apply(y, n)


TRANSLATION = ProgressionFamily(Kind.TRANSLATION)
DILATION = ProgressionFamily(Kind.DILATION)
EXPONENTIATION = ProgressionFamily(Kind.EXPONENTIATION)

FAMILIES = {"arith": TRANSLATION, "geom": DILATION, "exp": EXPONENTIATION}


@dataclass
class GreedySet:
    family: ProgressionFamily
    limit: int
    bitmap: np.ndarray = field(repr=False)

    @property
    def members(self) -> list[int]:
        return np.flatnonzero(self.bitmap).tolist()

    def __contains__(self, n: int) -> bool:
        return 0 <= n <= self.limit and bool(self.bitmap[n])

    def __len__(self) -> int:
        return int(self.bitmap.sum())


def as_bitmap(members: Iterable[int] | np.ndarray, size: Optional[int] = None) -> np.ndarray:
    """Boolean array indexed by value; ``size`` is the highest index kept."""
    if isinstance(members, np.ndarray) and members.dtype == bool:
        if size is None or len(members) > size:
            return members
        out = np.zeros(size + 1, dtype=bool)
        out[: len(members)] = members
        return out
    vals = sorted(int(m) for m in members)
    top = max(vals[-1] if vals else 0, size or 0)
    out = np.zeros(top + 1, dtype=bool)
    out[vals] = True
    return out


def _has(bitmap: np.ndarray, n: int) -> bool:
    return 0 <= n < len(bitmap) and bool(bitmap[n])


def _square_part_divisors(n: int) -> list[int]:
    """All ``r >= 2`` with ``r*r | n``, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e // 2 + 1)]
    return sorted(d for d in divs if d >= 2)


def completes_progression(candidate: int, members, family: ProgressionFamily):
    """Witness ``(x, f_n(x))`` of members with ``f_n(f_n(x)) == candidate``.

    Parameters are scanned in ascending order (step, ratio, or exponent ``m``
    with ``candidate = x**(m*m)``); the first hit is returned, else ``None``.
    ``members`` is a value-indexed boolean bitmap or an iterable of ints.
    """
    if candidate < family.start:
        raise ValueError(f"candidate {candidate} below family start {family.start}")
    c = candidate
    bm = as_bitmap(members, size=c)
    if family.kind is Kind.TRANSLATION:
        half = c // 2
        if half == 0:
            return None
        # index k of both views corresponds to step n = k + 1
        mids = bm[c - half : c][::-1]
        firsts = bm[c - 2 * half : c - 1 : 2][::-1]
        hits = np.flatnonzero(mids & firsts)
        if hits.size == 0:
            return None
        n = int(hits[0]) + 1
        return c - 2 * n, c - n
    if family.kind is Kind.DILATION:
        if c < 4:
            return None
        for r in _square_part_divisors(c):
            x, y = c // (r * r), c // r
            if _has(bm, x) and _has(bm, y):
                return x, y
        return None
    # candidate = base**(m*m) with base, m >= 2
    m = 2
    while 1 << (m * m) <= c:
        base = integer_root(c, m * m)
        if base ** (m * m) == c and _has(bm, base) and _has(bm, base**m):
            return base, base**m
        m += 1
    return None


def greedy_set(family: ProgressionFamily, limit: int) -> GreedySet:
    """Include each integer from ``family.start`` upward unless it completes a progression."""
    if limit < family.start:
        raise ValueError(f"limit {limit} below family start {family.start}")
    if limit > GREEDY_MAX_LIMIT:
        raise RangeError(f"greedy_set: limit {limit} exceeds {GREEDY_MAX_LIMIT}")
    bm = np.zeros(limit + 1, dtype=bool)
    for c in range(family.start, limit + 1):
        if completes_progression(c, bm, family) is None:
            bm[c] = True
    return GreedySet(family, limit, bm)


def verify_free(members, family: ProgressionFamily):
    """Some progression ``(x, f(x), f(f(x)))`` inside ``members``, or ``None``.

    Exhaustive over all parameters whose last term stays below ``max(members)``.
    """
    bm = as_bitmap(members)
    top = len(bm) - 1
    vals = np.flatnonzero(bm)
    if vals.size < 3:
        return None
    if family.kind is Kind.TRANSLATION:
        for x in vals.tolist():
            ys = vals[vals > x]
            zs = 2 * ys - x
            ok = zs <= top
            ys, zs = ys[ok], zs[ok]
            hit = np.flatnonzero(bm[zs])
            if hit.size:
                y = int(ys[hit[0]])
                return x, y, 2 * y - x
        return None
    if family.kind is Kind.DILATION:
        best = None
        r = 2
        while r * r <= top:
            M = top // (r * r)
            a = bm[1 : M + 1] & bm[r : r * M + 1 : r] & bm[r * r : r * r * M + 1 : r * r]
            hit = np.flatnonzero(a)
            if hit.size:
                x = int(hit[0]) + 1
                cand = (x, x * r, x * r * r)
                if best is None or cand < best:
                    best = cand
            r += 1
        return best
    x = 2
    while x**4 <= top:
        n = 2
        while x ** (n * n) <= top:
            trip = EXPONENTIATION.progression(x, n)
            if all(bm[t] for t in trip):
                return trip
            n += 1
        x += 1
    return None


def _any_progression_through(m: int, bm: np.ndarray, family: ProgressionFamily) -> bool:
    """Whether ``m`` would sit in a progression with members of ``bm``."""
    if completes_progression(m, bm, family) is not None:
        return True
    top = len(bm) - 1
    if family.kind is Kind.TRANSLATION:
        vals = np.flatnonzero(bm)
        # m as middle: x < m < 2m - x
        xs = vals[vals < m]
        zs = 2 * m - xs
        zs = zs[zs <= top]
        if zs.size and bm[zs].any():
            return True
        # m as first: m < y, 2y - m member
        ys = vals[vals > m]
        zs = 2 * ys - m
        zs = zs[zs <= top]
        return bool(zs.size and bm[zs].any())
    if family.kind is Kind.DILATION:
        # m as middle: m/r and m*r; m as first: m*r and m*r*r
        r = 2
        while m * r <= top:
            if m % r == 0 and bm[m // r] and bm[m * r]:
                return True
            if m * r * r <= top and bm[m * r] and bm[m * r * r]:
                return True
            r += 1
        return False
    if m < 2:
        return False
    # m as middle: m = x**n, last term m**n
    if m >= 4:
        for x, n in power_roots(m):
            if bm[x] and m**n <= top and bm[m**n]:
                return True
    # m as first term
    n = 2
    while m ** (n * n) <= top:
        if bm[m**n] and bm[m ** (n * n)]:
            return True
        n += 1
    return False


def verify_maximal(gs: GreedySet):
    """First non-member ``<= limit`` that could be added without a progression."""
    bm = gs.bitmap
    for m in range(gs.family.start, gs.limit + 1):
        if bm[m]:
            continue
        if not _any_progression_through(m, bm, gs.family):
            return m
    return None

