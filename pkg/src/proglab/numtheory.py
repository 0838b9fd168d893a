"""Arithmetic primitives shared by the rest of the package.

Primes, factorization over the 64-bit range, ternary digits, perfect-power
decomposition, and Riemann zeta values with certified error brackets.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

MAX_WORKING = 2**64 - 1
SIEVE_BOUND = 10**7

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_UNIT_ROUNDOFF = 2.0**-53
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)


class RangeError(ValueError):
    """Raised when an argument lies outside the supported working range."""


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ``(prime, exponent)`` pairs, ascending by prime."""

    factors: tuple[tuple[int, int], ...] = ()

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class ZetaValue:
    s: int
    value: float
    error_bound: float
    terms: int

    @property
    def lower(self) -> float:
        return self.value - self.error_bound

    @property
    def upper(self) -> float:
        return self.value + self.error_bound


# -- sieve -------------------------------------------------------------------

_spf = np.zeros(0, dtype=np.uint32)
_spf_lock = threading.Lock()


def _build_spf(size: int) -> np.ndarray:
    spf = np.zeros(size + 1, dtype=np.uint32)
    if size >= 2:
        spf[2::2] = 2
    for p in range(3, isqrt(size) + 1, 2):
        if spf[p] == 0:
            block = spf[p * p :: 2 * p]
            block[block == 0] = p
    odd = np.arange(3, size + 1, 2)
    unset = odd[spf[3::2] == 0]
    spf[unset] = unset
    return spf


def spf_table(n: int) -> np.ndarray:
    """Smallest-prime-factor table covering at least ``[0, min(n, SIEVE_BOUND)]``.

    The table grows geometrically on demand; readers get a finished array.
    """
    global _spf
    n = min(max(n, 2), SIEVE_BOUND)
    table = _spf
    if len(table) > n:
        return table
    with _spf_lock:
        if len(_spf) <= n:
            size = min(max(n, 2 * (len(_spf) - 1), 1 << 16), SIEVE_BOUND)
            _spf = _build_spf(size)
        return _spf


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    return primes_array(bound).tolist()


def primes_array(bound: int) -> np.ndarray:
    """Primes ``<= bound`` as an int64 numpy array."""
    if bound < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, isqrt(bound) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def nth_primes(k: int) -> list[int]:
    """The first ``k`` primes."""
    if k <= 0:
        return []
    if k < 6:
        bound = 13
    else:
        bound = int(k * (math.log(k) + math.log(math.log(k)))) + 1
    primes = primes_up_to(bound)
    while len(primes) < k:
        bound *= 2
        primes = primes_up_to(bound)
    return primes[:k]


# -- primality and factorization ----------------------------------------------


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for all ``n < 3.3e24``."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    # n is odd, composite, and not a prime power of a small prime
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"no factor found for {n}")


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(primes_up_to(1000))


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split_large(d, out)
    _split_large(n // d, out)


def factorize(n: int) -> Factorization:
    """Factor ``1 <= n < 2**64``.

    Uses the smallest-prime-factor sieve below ``SIEVE_BOUND``; larger inputs
    strip small primes by trial division and split the rest with
    Pollard-Brent.
    """
    n = int(n)
    if n < 1 or n > MAX_WORKING:
        raise RangeError(f"factorize: n={n} outside [1, 2**64)")
    if n == 1:
        return Factorization()
    out: dict[int, int] = {}
    if n <= SIEVE_BOUND:
        spf = spf_table(n)
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
        return Factorization(tuple(out.items()))
    for p in _trial_primes():
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        if n <= SIEVE_BOUND:
            for p, e in factorize(n):
                out[p] = out.get(p, 0) + e
        else:
            _split_large(n, out)
    return Factorization(tuple(sorted(out.items())))


def ternary_digits(n: int) -> list[int]:
    """Base-3 digits of ``n``, least significant first."""
    if n < 0:
        raise ValueError("ternary_digits: n must be nonnegative")
    if n == 0:
        return [0]
    digits = []
    while n:
        n, r = divmod(n, 3)
        digits.append(r)
    return digits


def exponent_gcd(n: int) -> int:
    if n < 2:
        raise ValueError(f"exponent_gcd undefined for n={n}")
    return math.gcd(*factorize(n).exponents)


def integer_root(n: int, k: int) -> int:
    """Floor of the real ``k``-th root of ``n >= 0``."""
    if n < 0 or k < 1:
        raise ValueError("integer_root needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def power_roots(n: int) -> list[tuple[int, int]]:
    """All ``(base, k)`` with ``base**k == n`` and ``k >= 2``, ascending in ``k``."""
    if n < 2:
        raise ValueError("power_roots: n must be >= 2")
    # peel prime-degree roots until n = core**g with core not a perfect power
    core, g = n, 1
    bits = n.bit_length()
    degrees = _SMALL_PRIMES if bits <= 64 else primes_up_to(bits)
    for q in degrees:
        if q > bits:
            break
        while core >= 2**q:
            b = _exact_root(core, q)
            if b is None:
                break
            core, g = b, g * q
    return [(core ** (g // k), k) for k in range(2, g + 1) if g % k == 0]


def _exact_root(n: int, k: int):
    if n < 1 << 50:
        b = round(n ** (1.0 / k))
        for c in (b, b - 1, b + 1):
            if c >= 2 and c**k == n:
                return c
        return None
    b = integer_root(n, k)
    return b if b**k == n else None


def is_squareful(n: int) -> bool:
    return all(e >= 2 for e in factorize(n).exponents)


def is_k_free(n: int, k: int) -> bool:
    if k < 2:
        raise ValueError("is_k_free: k must be >= 2")
    return all(e < k for e in factorize(n).exponents)


def in_b_m(n: int, m: int) -> bool:
    """True iff the largest exponent in the factorization of ``n`` is exactly ``m``.

    This is the set of (m+1)-free numbers that are not m-free.
    """
    exps = factorize(n).exponents
    return bool(exps) and max(exps) == m


# -- vectorized exponent profile ----------------------------------------------


def exponent_rows(N: int) -> np.ndarray:
    """Exponent matrix for ``0..N``.

    Row ``j`` holds the exponent of the ``j``-th smallest prime factor of each
    integer (0 once the factorization is exhausted). Column 0 and 1 are all
    zero. Predicates over prime exponents reduce along axis 0.
    """
    if N > SIEVE_BOUND:
        raise RangeError(f"exponent_rows: N={N} exceeds sieve bound {SIEVE_BOUND}")
    spf = spf_table(N)[: N + 1].astype(np.int64)
    rest = np.arange(N + 1, dtype=np.int64)
    rows = []
    active = np.flatnonzero(rest > 1)
    while active.size:
        p = spf[rest[active]]
        exps = np.zeros(N + 1, dtype=np.uint8)
        idx, cur = active, p
        while idx.size:
            rest[idx] //= cur
            exps[idx] += 1
            keep = rest[idx] % cur == 0
            idx, cur = idx[keep], cur[keep]
        rows.append(exps)
        active = active[rest[active] > 1]
    if not rows:
        return np.zeros((1, N + 1), dtype=np.uint8)
    return np.vstack(rows)


# -- zeta --------------------------------------------------------------------


def _tail_integral(K: float, s: int) -> float:
    """Integral of t**-s over [K, inf)."""
    return K ** (1 - s) / (s - 1)


def zeta(s: int, eps: float = 1e-12) -> ZetaValue:
    """Riemann zeta at an integer ``s >= 2`` with a certified bracket.

    With ``S_K`` the partial sum of ``K`` terms, the true value lies in
    ``[S_K + int_{K+1}^inf t^-s dt, S_K + int_K^inf t^-s dt]``. The midpoint is
    returned; the half-width plus a float-summation allowance is the error.
    """
    if s < 2:
        raise ValueError(f"zeta: s={s} must be >= 2")
    if not eps > 0:
        raise ValueError("zeta: eps must be positive")
    # half-width is at most K**-s / 2
    K = max(2, math.ceil((2 * eps) ** (-1.0 / s)))
    while True:
        half = (_tail_integral(K, s) - _tail_integral(K + 1, s)) / 2
        if half + 4 * _UNIT_ROUNDOFF <= eps or K > 10**8:
            break
        K = math.ceil(K * 1.25)
    terms = np.arange(1, K + 1, dtype=np.float64) ** -float(s)
    partial = math.fsum(terms)
    lo = partial + _tail_integral(K + 1, s)
    hi = partial + _tail_integral(K, s)
    value = (lo + hi) / 2
    err = (hi - lo) / 2 + 4 * _UNIT_ROUNDOFF * value
    if err > eps:
        raise ArithmeticError(f"zeta({s}) cannot reach eps={eps} in float64")
    return ZetaValue(s=s, value=value, error_bound=err, terms=K)
