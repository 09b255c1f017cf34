"""
Exact Lagrange interpolation over the rationals with surplus-point checksums.
"""

from collections.abc import Mapping
from fractions import Fraction

from petersen_flow.exceptions import InterpolationChecksumError
from petersen_flow.polynomials import TraceKey, TracePolynomial, horner


def vanishing_poly(xs: list[Fraction]) -> list[Fraction]:
    """Ascending coefficients of Π (x - x_i)."""
    root = [Fraction(1)]
    for x in xs:
        root.insert(0, Fraction(0))
        for j in range(len(root) - 1):
            root[j] -= root[j + 1] * x
    return root


def lagrange_coefficients(xs: list[Fraction], ys: list[Fraction]) -> list[Fraction]:
    """Unique polynomial of degree < len(xs) through (xs, ys), ascending coefficients."""
    root = vanishing_poly(xs)
    out = [Fraction(0)] * len(xs)
    for x, y in zip(xs, ys, strict=True):
        if not y:
            continue
        # synthetic division of the master polynomial by (t - x)
        num = [Fraction(0)] * (len(root) - 1)
        num[-1] = root[-1]
        for j in range(len(root) - 2, 0, -1):
            num[j - 1] = root[j] + num[j] * x
        scale = y / horner(tuple(num), x)
        for j, c in enumerate(num):
            if c:
                out[j] += c * scale
    return out


def interpolate(
    values: Mapping[int, Fraction], d: int, key: TraceKey = (0, 0, (), 0)
) -> TracePolynomial:
    """Degree <= d polynomial through the first d+1 points; the rest are checksums.

    Args:
        values: {integer Q: exact value}, at least d+2 entries
        d: Degree bound
        key: Trace key recorded on the result

    Returns:
        TracePolynomial with exact rational coefficients
    """
    points = sorted(values)
    if len(points) < d + 2:
        raise ValueError(f"need at least {d + 2} points for degree {d}, got {len(points)}")
    fit, surplus = points[: d + 1], points[d + 1 :]
    coefficients = lagrange_coefficients(
        [Fraction(x) for x in fit], [Fraction(values[x]) for x in fit]
    )
    poly = TracePolynomial(key=key, coefficients=tuple(coefficients), checksum_points=tuple(surplus))
    for x in surplus:
        got = poly(Fraction(x))
        if got != Fraction(values[x]):
            raise InterpolationChecksumError(x, values[x], got)
    return poly
