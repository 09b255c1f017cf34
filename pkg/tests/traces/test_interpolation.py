"""Tests for exact interpolation with checksum points."""
from fractions import Fraction

import pytest

from petersen_flow.exceptions import InterpolationChecksumError
from petersen_flow.traces.interpolation import interpolate, lagrange_coefficients, vanishing_poly


def test_vanishing_poly():
    """(x - 1)(x - 2) = 2 - 3x + x^2."""
    assert vanishing_poly([Fraction(1), Fraction(2)]) == [2, -3, 1]


def test_lagrange_rational_values():
    """A polynomial with rational coefficients is recovered exactly."""
    xs = [Fraction(x) for x in (1, 2, 3)]
    ys = [Fraction(1, 2) * x * x - Fraction(1, 3) for x in xs]
    assert lagrange_coefficients(xs, ys) == [Fraction(-1, 3), 0, Fraction(1, 2)]


def test_interpolate_with_checksums():
    """Degree 2 from five points keeps two checksum points."""
    values = {x: Fraction(3 * x * x - x + 5) for x in range(5)}
    poly = interpolate(values, 2)
    assert poly.coefficients == (5, -1, 3)
    assert poly.checksum_points == (3, 4)


def test_interpolate_detects_bad_degree():
    """A cubic does not pass the degree-2 checksum."""
    values = {x: Fraction(x**3) for x in range(5)}
    with pytest.raises(InterpolationChecksumError):
        interpolate(values, 2)


def test_interpolate_needs_surplus_point():
    """d + 2 points are required."""
    with pytest.raises(ValueError):
        interpolate({0: Fraction(1), 1: Fraction(2)}, 1)
