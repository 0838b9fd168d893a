"""Slow, obviously-correct reference implementations used only by the tests.

None of these import from ``proglab``.
"""

from itertools import product


def trial_is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def trial_factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def naive_greedy(limit, start, step_ok):
    """Greedy set by checking every pair of earlier members.

    ``step_ok(x, y, z)`` says whether ``x < y < z`` form a progression.
    """
    members = []
    for c in range(start, limit + 1):
        s = set(members)
        bad = any(step_ok(x, y, c) for x in members for y in members if x < y and y in s)
        if not bad:
            members.append(c)
    return members


def is_arith(x, y, z):
    return y - x == z - y and y > x


def is_geom(x, y, z):
    # integer ratio r >= 2
    return y % x == 0 and y // x >= 2 and z == y * (y // x)


def is_expo(x, y, z):
    if x < 2:
        return False
    for n in range(2, 64):
        if x**n > y:
            return False
        if x**n == y:
            return z == y**n
    return False


def brute_crt(system):
    M = 1
    for _, m in system:
        M *= m
    for a in range(M):
        if all(a % m == r % m for r, m in system):
            return a
    return None


def a3_by_enumeration(digits):
    """All numbers with at most ``digits`` ternary digits, none equal to 2."""
    return sorted(sum(d * 3**i for i, d in enumerate(ds)) for ds in product((0, 1), repeat=digits))
