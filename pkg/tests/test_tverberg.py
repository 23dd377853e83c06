from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nobrooks.tverberg import (
    TverbergInfeasible, TverbergPartition, colorful_partition, partition_weights,
    restricted_growth_strings, stirling2, tverberg_partition,
)


def brute_stirling(n, k):
    """Count surjections onto k labels, divided by k!."""
    if n == 0:
        return int(k == 0)
    surj = sum(1 for f in itertools.product(range(k), repeat=n) if len(set(f)) == k)
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return surj // fact


def test_midpoint_example():
    P = tverberg_partition([[0], [1], [2]], 2)
    assert P.parts == ((0, 2), (1,))
    assert P.weights == ((Fraction(1, 2), Fraction(1, 2)), (Fraction(1),))
    assert P.witness == (Fraction(1),)
    assert P.check()


@pytest.mark.parametrize("m", [1, 2, 3])
def test_radon_partition_general_position(m):
    # m+2 points: the vertices of a simplex plus an interior point
    pts = [[0] * m] + [[int(i == j) for i in range(m)] for j in range(m)] + [[Fraction(1, m + 2)] * m]
    P = tverberg_partition(pts, 2)
    assert P.check() and P.r == 2
    # independent oracle: the chosen split is LP-feasible on its own
    assert partition_weights(P.points, [list(b) for b in P.parts]) is not None


def test_distinct_singletons_are_infeasible():
    with pytest.raises(TverbergInfeasible):
        tverberg_partition([[0], [1], [1]], 3)


def test_equal_singletons_are_feasible():
    P = tverberg_partition([[2], [2], [2]], 3)
    assert P.check() and P.witness == (Fraction(2),)


def test_one_block():
    P = tverberg_partition([[1, 2], [3, 4]], 1)
    assert P.check() and P.parts == ((0, 1),)


def test_check_catches_bad_partitions():
    P = tverberg_partition([[0], [1], [2]], 2)
    bad = TverbergPartition(P.points, P.parts, P.weights, (Fraction(1, 2),))
    assert not bad.check()
    bad = TverbergPartition(P.points, ((0,), (1,)), ((Fraction(1),), (Fraction(1),)), (Fraction(0),))
    assert not bad.check()


@pytest.mark.parametrize("n,k", [(n, k) for n in range(7) for k in range(n + 1)])
def test_stirling_numbers(n, k):
    assert stirling2(n, k) == brute_stirling(n, k)
    if k:
        strings = list(restricted_growth_strings(n, k))
        assert len(strings) == stirling2(n, k) == len({tuple(s) for s in strings})
        for s in strings:
            assert s[0] == 0 if n else True
            assert all(s[i] <= max(s[:i], default=-1) + 1 for i in range(n))


coords = st.integers(-6, 6)


@settings(max_examples=40)
@given(st.integers(1, 3).flatmap(lambda d: st.integers(2, 3).flatmap(lambda r: st.lists(
    st.lists(coords, min_size=d, max_size=d), min_size=(d + 1) * (r - 1) + 1,
    max_size=(d + 1) * (r - 1) + 2).map(lambda pts: (pts, r)))))
def test_guaranteed_count_always_succeeds(case):
    pts, r = case
    P = tverberg_partition(pts, r)
    assert P.check() and P.r == r


@settings(max_examples=25)
@given(st.integers(2, 3).flatmap(lambda d: st.lists(
    st.lists(coords, min_size=d, max_size=d), min_size=(d + 1) * 2 + 1, max_size=(d + 1) * 2 + 1)))
def test_colorful_descent_matches_guarantee(pts):
    P = colorful_partition([tuple(Fraction(x) for x in p) for p in pts], 3)
    assert P.check() and P.r == 3


@given(st.lists(st.fractions(-10, 10, max_denominator=7), min_size=3, max_size=12), st.integers(2, 6))
def test_intervals_in_one_dimension(xs, r):
    r = min(r, (len(xs) + 1) // 2)
    P = tverberg_partition([[x] for x in xs], r, method="intervals")
    assert P.check() and P.r == r
