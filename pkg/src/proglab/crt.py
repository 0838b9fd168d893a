"""Chinese remainder solving and gap witnesses.

A gap witness is an integer ``a`` such that ``a + j`` is exactly divisible
by ``p_{j+1}**m`` for ``j < l``, where ``m`` is an exponent excluded at the
previous level. Each of ``a, ..., a + l - 1`` is then outside the set.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .families import first_excluded
from .numtheory import nth_primes

MAX_GAP_LEVEL = 4


class NonCoprimeModuli(ValueError):
    def __init__(self, i: int, j: int, m_i: int, m_j: int):
        super().__init__(f"moduli #{i} ({m_i}) and #{j} ({m_j}) share factor {gcd(m_i, m_j)}")
        self.pair = (i, j)


@dataclass(frozen=True)
class CrtWitness:
    a: int
    length: int
    level: int
    excluded_exponent: int
    moduli_product: int

    @property
    def primes(self) -> list[int]:
        return nth_primes(self.length)

    def system(self) -> list[tuple[int, int]]:
        m = self.excluded_exponent
        return [(p**m, p ** (m + 1)) for p in self.primes]

    def to_json(self) -> dict:
        return {
            "a": str(self.a),
            "length": self.length,
            "level": self.level,
            "excluded_exponent": self.excluded_exponent,
            "moduli_product": str(self.moduli_product),
        }

    @classmethod
    def from_json(cls, d: dict) -> "CrtWitness":
        return cls(
            a=int(d["a"]),
            length=int(d["length"]),
            level=int(d["level"]),
            excluded_exponent=int(d["excluded_exponent"]),
            moduli_product=int(d["moduli_product"]),
        )


def check_coprime(moduli: Sequence[int]) -> None:
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if gcd(moduli[i], moduli[j]) != 1:
                raise NonCoprimeModuli(i, j, moduli[i], moduli[j])


def crt_solve(system: Sequence[tuple[int, int]]) -> int:
    """Least nonnegative ``a`` with ``a = r (mod m)`` for every ``(r, m)``."""
    moduli = [m for _, m in system]
    if any(m < 1 for m in moduli):
        raise ValueError("moduli must be positive")
    check_coprime(moduli)
    a, M = 0, 1
    for r, m in system:
        # a + M*t = r (mod m)
        t = (r - a) * pow(M, -1, m) % m
        a += M * t
        M *= m
    return a % M


def _witness(level: int, length: int, m: int) -> CrtWitness:
    if length < 1:
        raise ValueError("gap length must be >= 1")
    system = [(p**m - j, p ** (m + 1)) for j, p in enumerate(nth_primes(length))]
    system = [(r % mod, mod) for r, mod in system]
    a = crt_solve(system)
    return CrtWitness(a, length, level, m, prod(mod for _, mod in system))


def rankin_gap_witness(length: int) -> CrtWitness:
    """``a + j = p_{j+1}**2 (mod p_{j+1}**3)``: a run of ``length`` non-members of G3."""
    return _witness(2, length, 2)


def s_level_gap_witness(level: int, length: int) -> CrtWitness:
    if not 2 <= level <= MAX_GAP_LEVEL:
        raise ValueError(f"gap witnesses support levels 2..{MAX_GAP_LEVEL}, got {level}")
    return _witness(level, length, first_excluded(level - 1))


def verify_witness(w: CrtWitness) -> bool:
    """Exact-divisibility check of every ``a + j``; never factors ``a + j``."""
    if not 0 < w.a < w.moduli_product:
        return False
    m = w.excluded_exponent
    for j, p in enumerate(nth_primes(w.length)):
        n = w.a + j
        if n % p**m or not n % p ** (m + 1):
            return False
    return True
