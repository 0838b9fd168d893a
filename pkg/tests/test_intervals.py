from fractions import Fraction

import numpy as np
import pytest

from proglab.intervals import (
    anchors,
    block_member,
    find_geometric_progression,
    next_anchor,
    s_block,
    union_member,
    verify_block_free,
)

BLOCK_4320 = [(90, 96), (108, 120), (135, 160), (180, 360), (480, 540), (1080, 4320)]


def brute_count(N):
    return sum(block_member(n, N) for n in range(1, N + 1))


def test_block_4320():
    blk = s_block(4320)
    assert [(int(lo), int(hi)) for lo, hi in blk.intervals] == BLOCK_4320
    expected = sum(hi - lo for lo, hi in BLOCK_4320)
    assert blk.integer_count() == brute_count(4320) == expected == 3523
    assert blk.density() == Fraction(3523, 4320)
    assert round(float(blk.density()), 6) == 0.815509


def test_block_48():
    blk = s_block(48)
    assert blk.intervals[0] == (Fraction(1), Fraction(48, 45))
    assert blk.intervals[-1] == (Fraction(12), Fraction(48))


@pytest.mark.parametrize("N", [48, 100, 997, 4320, 12345])
def test_measure_fraction_is_constant(N):
    assert s_block(N).density() == Fraction(3523, 4320)


@pytest.mark.parametrize("N", [48, 97, 1000, 4321, 43200, 99991])
def test_integer_count_near_measure(N):
    blk = s_block(N)
    assert blk.integer_count() == brute_count(N) == int(blk.mask(N).sum())
    assert abs(blk.integer_count() / N - 3523 / 4320) <= 12 / N


def test_intervals_disjoint_ascending():
    blk = s_block(4320)
    ends = [x for iv in blk.intervals for x in iv]
    assert all(a < b for a, b in zip(ends[::2], ends[1::2]))
    assert all(a <= b for a, b in zip(ends[1::2], ends[2::2]))


def test_block_member_examples():
    assert block_member(3000, 4320)
    assert not block_member(100, 4320)
    assert block_member(91, 4320)
    assert not block_member(90, 4320) and block_member(96, 4320)


def test_next_anchor():
    assert next_anchor(4320, 4320) == 9953280 == 48**2 * 4320
    assert next_anchor(5000, 5000) == 2304 * 5000
    assert next_anchor(9953280, 4320) == 48**2 * 9953280**2 // 4320
    with pytest.raises(ValueError):
        next_anchor(7, 4320)


def test_anchor_growth():
    a = anchors(4320, 6)
    assert all(b >= 2304 * x for x, b in zip(a, a[1:]))
    assert a[2] < 2**64 < a[3]


def test_union_member():
    assert union_member(3000) and union_member(9953280) and not union_member(5000)
    assert union_member(anchors(4320, 3)[2])


@pytest.mark.parametrize("N", [4320, 4800, 43200, 432000])
def test_block_free(N):
    assert verify_block_free(N) is None


def test_block_free_brute_small():
    N = 4320
    m = s_block(N).mask(N)
    for r in range(2, 66):
        for a in range(1, N // (r * r) + 1):
            assert not (m[a] and m[a * r] and m[a * r * r])


def test_full_interval_has_progression():
    m = np.ones(4321, dtype=bool)
    m[0] = False
    assert find_geometric_progression(m) == (1, 2, 4)


def test_verify_bound():
    with pytest.raises(ValueError):
        verify_block_free(10**6 + 1)
