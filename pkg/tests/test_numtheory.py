import math
import random

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from proglab.numtheory import (
    Factorization,
    RangeError,
    exponent_gcd,
    exponent_rows,
    factorize,
    in_b_m,
    integer_root,
    is_k_free,
    is_prime,
    is_squareful,
    nth_primes,
    power_roots,
    primes_up_to,
    ternary_digits,
    zeta,
)

from oracles import trial_factor, trial_is_prime


def test_primes_up_to():
    assert primes_up_to(0) == []
    assert primes_up_to(1) == []
    assert primes_up_to(10) == [2, 3, 5, 7]
    assert primes_up_to(100) == [n for n in range(101) if trial_is_prime(n)]
    assert len(primes_up_to(100)) == 25


def test_nth_primes():
    assert nth_primes(0) == []
    assert nth_primes(3) == [2, 3, 5]
    first = [n for n in range(2, 200) if trial_is_prime(n)]
    assert nth_primes(10) == first[:10]
    assert nth_primes(10)[-1] == 29
    assert nth_primes(46) == first[:46]


@pytest.mark.parametrize(
    "n, expected",
    [(1, []), (360, [(2, 3), (3, 2), (5, 1)]), (65536, [(2, 16)]), (2**61 - 1, [(2**61 - 1, 1)])],
)
def test_factorize_examples(n, expected):
    f = factorize(n)
    assert list(f) == expected
    assert f.value() == n


def test_factorize_rejects_out_of_range():
    with pytest.raises(RangeError):
        factorize(0)
    with pytest.raises(RangeError):
        factorize(2**64)


@pytest.mark.slow
def test_factorize_roundtrip_small():
    for n in range(1, 10**6 + 1):
        assert factorize(n).value() == n


def test_factorize_matches_trial_division():
    for n in range(2, 5000):
        assert dict(factorize(n).factors) == trial_factor(n)


def test_factorize_random_64bit():
    rng = random.Random(20261016)
    for _ in range(1000):
        n = rng.getrandbits(64) or 1
        f = factorize(n)
        assert f.value() == n
        primes = [p for p, _ in f]
        assert primes == sorted(set(primes))
        assert all(is_prime(p) for p in primes)
        assert all(e >= 1 for _, e in f)


def test_factorize_hard_semiprime():
    p, q = 4294967291, 4294967279  # two largest primes below 2**32
    assert list(factorize(p * q)) == [(q, 1), (p, 1)]


def test_is_prime_against_trial_division():
    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if trial_is_prime(n)]


@pytest.mark.parametrize("n, digits", [(0, [0]), (4, [1, 1]), (5, [2, 1]), (13, [1, 1, 1])])
def test_ternary_examples(n, digits):
    assert ternary_digits(n) == digits


@pytest.mark.slow
def test_ternary_roundtrip():
    for n in range(10**6 + 1):
        d = ternary_digits(n)
        assert sum(x * 3**i for i, x in enumerate(d)) == n
        assert d[-1] != 0 or n == 0


@pytest.mark.parametrize("n, g", [(64, 6), (360, 1), (11664, 2)])
def test_exponent_gcd(n, g):
    assert exponent_gcd(n) == g


def test_exponent_gcd_rejects_one():
    with pytest.raises(ValueError):
        exponent_gcd(1)


def test_power_roots_examples():
    assert power_roots(6) == []
    assert power_roots(64) == [(8, 2), (4, 3), (2, 6)]
    roots = power_roots(65536)
    for pair in [(2, 16), (4, 8), (16, 4), (256, 2)]:
        assert pair in roots


def test_power_roots_match_integer_root_search():
    for n in list(range(2, 3000)) + [3**40, 2**63, 10**18, 7**22 * 1]:
        expected = []
        for k in range(2, n.bit_length() + 1):
            b = round(n ** (1 / k))
            for c in (b - 1, b, b + 1):
                if c >= 2 and c**k == n:
                    expected.append((c, k))
        assert power_roots(n) == expected


@pytest.mark.slow
def test_power_roots_iff_gcd_at_least_two():
    N = 10**6
    g = np.gcd.reduce(exponent_rows(N).astype(np.int64), axis=0)
    for n in range(2, N + 1):
        roots = power_roots(n)
        assert bool(roots) == (g[n] >= 2)
        assert all(g[n] % k == 0 for _, k in roots)


def test_integer_root():
    for n in [0, 1, 2, 15, 16, 17, 10**30, 2**64 - 1]:
        for k in range(1, 8):
            r = integer_root(n, k)
            assert r**k <= n < (r + 1) ** k


def test_zeta_examples():
    z2 = zeta(2, 1e-9)
    assert abs(z2.value - math.pi**2 / 6) <= 1e-9
    assert z2.error_bound <= 1e-9
    z3 = zeta(3, 1e-9)
    assert abs(z3.value - 1.2020569031595942) <= 1e-9
    z60 = zeta(60, 1e-12)
    assert abs(z60.value - (1 + 2.0**-60)) <= 1e-12


def test_zeta_rejects_small_s():
    with pytest.raises(ValueError):
        zeta(1)


@pytest.mark.parametrize("s", range(2, 21))
def test_zeta_brackets_true_value(s):
    z = zeta(s, 1e-12)
    assert z.error_bound <= 1e-12
    true = float(mpmath.zeta(s))
    assert z.lower <= true + 1e-16 and true - 1e-16 <= z.upper
    partial = math.fsum(n ** -float(s) for n in range(1, z.terms + 1))
    tail_upper = z.terms ** (1 - s) / (s - 1)
    assert partial <= z.value + z.error_bound
    assert z.value - z.error_bound <= partial + tail_upper


def test_zeta_decreasing_in_s():
    values = [zeta(s, 1e-12).value for s in range(2, 30)]
    assert all(a > b for a, b in zip(values, values[1:]) if b > 1.0)
    assert all(v >= 1 for v in values)


def test_squareful_and_kfree_examples():
    assert is_squareful(1)
    assert not is_squareful(12)
    assert is_squareful(72)
    assert not is_k_free(8, 3)
    assert is_k_free(12, 3)
    assert is_k_free(1, 2)


@given(st.integers(1, 10**12), st.integers(2, 40))
@settings(max_examples=300, deadline=None)
def test_k_free_monotone(n, k):
    if is_k_free(n, k):
        assert is_k_free(n, k + 1)


def test_b_m_is_kfree_difference():
    for n in range(1, 3000):
        for m in (2, 3, 4):
            assert in_b_m(n, m) == (is_k_free(n, m + 1) and not is_k_free(n, m))


def test_exponent_rows_match_factorize():
    rows = exponent_rows(5000)
    for n in range(2, 5001):
        col = [int(e) for e in rows[:, n] if e]
        assert col == list(factorize(n).exponents)


def test_factorization_empty_is_one():
    assert Factorization().value() == 1
