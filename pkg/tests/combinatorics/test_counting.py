"""Tests for closed-form counting functions."""
from math import factorial

import pytest

from petersen_flow.combinatorics.counting import (
    bell,
    dim_marked,
    dim_marked_nosingleton,
    marked_total,
    marked_total_closed,
    marked_total_nosingleton,
    marked_total_nosingleton_closed,
    n_nontrivial,
    n_trivial,
    no_singleton_count,
    orbit_count,
    stirling2,
    total_nontrivial,
    young_count,
)


def test_bell_and_stirling():
    """Small Bell and Stirling numbers."""
    assert [bell(n) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]
    assert stirling2(4, 2) == 7
    assert stirling2(2, 3) == 0
    assert sum(stirling2(5, l) for l in range(6)) == bell(5)
    with pytest.raises(ValueError):
        bell(-1)


def test_no_singleton_count():
    """S_n for n = 0..5."""
    assert [no_singleton_count(n) for n in range(6)] == [1, 0, 1, 1, 4, 11]


def test_young_count():
    """Y_l counts involutions."""
    assert [young_count(l) for l in range(1, 6)] == [1, 2, 4, 10, 26]


def test_marked_totals():
    """B_k^(0) for k = 0..5, both by definition and by the closed sum."""
    expected = [1, 2, 6, 22, 94, 454]
    assert [marked_total(k) for k in range(6)] == expected
    assert [marked_total_closed(k) for k in range(6)] == expected


@pytest.mark.parametrize("k", range(7))
def test_marked_totals_without_singletons(k):
    """The singleton-free total agrees with its binomial inversion."""
    assert marked_total_nosingleton(k) == marked_total_nosingleton_closed(k)


def test_dim_marked_divisible():
    """Marked dimensions are multiples of l!."""
    for k in range(1, 6):
        for l in range(k + 1):
            assert dim_marked(k, l) % factorial(l) == 0
            assert dim_marked_nosingleton(k, l) % factorial(l) == 0
    assert dim_marked(1, 1) == 1
    assert dim_marked(2, 2) == 2


def test_orbit_counts():
    """Reduced orbits per sector for k = 2 and 3."""
    assert [orbit_count(2, l) for l in range(1, 4)] == [4, 3, 1]
    assert [orbit_count(3, l) for l in range(1, 5)] == [11, 13, 6, 1]


def test_trivial_multiplicities():
    """Trivial-eigenvalue multiplicity per irrep for k = 3."""
    assert [n_trivial(3, l) for l in range(1, 5)] == [1, 4, 3, 1]
    assert n_trivial(3, 0) == 0


def test_distinct_eigenvalue_counts():
    """D̃_k for k = 1..7."""
    expected = [3, 7, 36, 229, 1658, 12803, 105934]
    assert [total_nontrivial(k) for k in range(1, 8)] == expected


def test_nontrivial_sector_bounds():
    """Sectors outside 0..k+1 are rejected."""
    assert n_nontrivial(3, 4) == 0
    assert n_nontrivial(3, 3) == 3
    with pytest.raises(ValueError):
        n_nontrivial(3, 5)
