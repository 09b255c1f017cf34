"""
Exact rational sign evaluation and real-root certificates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import sympy as sp

from petersen_flow.polynomials import FlowPolynomial, horner
from petersen_flow.roots.finder import STURM_MAX_DEGREE, RootInterval

logger = logging.getLogger(__name__)

Rational = Fraction | int


def evaluate_exact(poly: FlowPolynomial, q: Rational) -> Fraction:
    """Horner evaluation of poly at a rational point, exactly."""
    return Fraction(horner(poly.coefficients, Fraction(q)))


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass
class RootCertificate:
    """Endpoint values of an interval and whether they prove a root inside."""

    lo: Fraction
    hi: Fraction
    value_lo: Fraction
    value_hi: Fraction
    count: int | None = None  # Sturm count of roots in [lo, hi]

    @property
    def certified(self) -> bool:
        return _sign(self.value_lo) * _sign(self.value_hi) < 0

    @property
    def exactly_one(self) -> bool:
        return self.certified and self.count == 1


def certify_real_root(
    poly: FlowPolynomial, lo: Rational, hi: Rational, sturm: bool = True
) -> RootCertificate:
    """Certificate for a real root of poly in (lo, hi).

    Equal endpoint signs give an uncertified certificate rather than an error.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    cert = RootCertificate(lo, hi, evaluate_exact(poly, lo), evaluate_exact(poly, hi))
    if sturm and poly.degree <= STURM_MAX_DEGREE:
        cert.count = int(
            poly.to_sympy().count_roots(sp.Rational(lo.numerator, lo.denominator), sp.Rational(hi.numerator, hi.denominator))
        )
    logger.debug(f"Certificate on ({float(lo)}, {float(hi)}): certified={cert.certified}")
    return cert


def mpf_to_fraction(x: mp.mpf) -> Fraction:
    """The exact binary rational held by an mpf."""
    man, exp = x.man_exp
    return Fraction(int(man) * 2**exp) if exp >= 0 else Fraction(int(man), 2**-exp)


def certify_root(poly: FlowPolynomial, root: RootInterval, digits: int) -> RootCertificate | None:
    """Certificate on a rational interval of width 10^(-digits/2) around a real root."""
    if not root.is_real:
        return None
    centre = mpf_to_fraction(root.center.real)
    half = Fraction(1, 2 * 10 ** max(digits // 2, 1))
    return certify_real_root(poly, centre - half, centre + half, sturm=False)
