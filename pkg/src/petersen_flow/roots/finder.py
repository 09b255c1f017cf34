"""
All complex roots of a flow polynomial with guaranteed inclusion radii.

Each square-free factor is solved by simultaneous (Durand-Kerner) iteration in mpmath.
Every approximation z_i gets the Weierstrass inclusion disc of radius
deg·|p(z_i) / (a_n Π_{j≠i} (z_i - z_j))|; pairwise disjoint discs each hold exactly one root.
Working precision starts at 64 bits and doubles until every radius meets the target.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import mpmath as mp
import sympy as sp
from mpmath.libmp import NoConvergence
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from petersen_flow.exceptions import DegeneratePolynomialError, PrecisionNotReached
from petersen_flow.polynomials import Q, FlowPolynomial

logger = logging.getLogger(__name__)

START_PREC = 64
MAX_DOUBLINGS = 10
STURM_MAX_DEGREE = 200


@dataclass(frozen=True)
class RootInterval:
    """Disc (center, radius) holding one root of the given multiplicity."""

    center: mp.mpc
    radius: mp.mpf
    multiplicity: int = 1
    is_real: bool = False

    @property
    def real(self) -> float:
        return float(self.center.real)

    @property
    def imag(self) -> float:
        return float(self.center.imag)

    def contains(self, z: complex) -> bool:
        return bool(abs(self.center - mp.mpc(z)) <= self.radius)

    def row(self, digits: int) -> tuple[str, str, str]:
        re = mp.nstr(self.center.real, digits, strip_zeros=False)
        im = mp.nstr(self.center.imag, digits, strip_zeros=False) if not self.is_real else "0"
        return re, im, mp.nstr(self.radius, 3)


@dataclass
class RootSet:
    """All roots of one polynomial at a requested precision."""

    roots: list[RootInterval]
    digits: int
    degree: int
    working_prec: dict[int, int] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    @property
    def real_roots(self) -> list[RootInterval]:
        return [r for r in self.roots if r.is_real]

    def nearest(self, z: complex) -> RootInterval:
        return min(self.roots, key=lambda r: abs(r.center - mp.mpc(z)))


def _inclusion_radii(coeffs: list[int], zs: list[mp.mpc]) -> list[mp.mpf]:
    n = len(zs)
    lead = mp.mpf(coeffs[0])
    radii = []
    for i, z in enumerate(zs):
        denom = lead
        for j, w in enumerate(zs):
            if j != i:
                denom *= z - w
        if denom == 0:
            raise PrecisionNotReached("coincident approximations")
        radii.append(n * abs(mp.polyval(coeffs, z) / denom))
    return radii


def _symmetrise(zs: list[mp.mpc], real_count: int | None) -> list[tuple[mp.mpc, bool]]:
    """Snap the real roots onto the axis and mirror the upper half-plane roots."""
    order = sorted(zs, key=lambda z: abs(z.imag))
    if real_count is None:
        real_count = 0
    real = [mp.mpc(z.real, 0) for z in order[:real_count]]
    rest = order[real_count:]
    upper = [z for z in rest if z.imag > 0]
    if 2 * len(upper) != len(rest):
        raise PrecisionNotReached("complex approximations do not pair up")
    out = [(z, True) for z in real]
    for z in upper:
        out.extend([(mp.conj(z), False), (z, False)])
    return out


def _solve_factor(factor: sp.Poly, digits: int, prec: int) -> list[tuple[mp.mpc, mp.mpf, bool]]:
    coeffs = [int(c) for c in factor.all_coeffs()]
    degree = factor.degree()
    real_count = int(factor.count_roots()) if degree <= STURM_MAX_DEGREE else None
    target = mp.mpf(10) ** (-digits)
    with mp.workprec(prec):
        approx = mp.polyroots(coeffs, maxsteps=50 + 10 * degree, extraprec=prec, cleanup=False)
        approx = [mp.mpc(z) for z in approx]
        if real_count is None:
            real_count = sum(1 for z in approx if abs(z.imag) <= target)
        placed = _symmetrise(approx, real_count)
        radii = _inclusion_radii(coeffs, [z for z, _ in placed])
        for i, (z, _) in enumerate(placed):
            for j in range(i + 1, len(placed)):
                if abs(z - placed[j][0]) <= radii[i] + radii[j]:
                    raise PrecisionNotReached(f"inclusion discs overlap at {mp.nstr(z, 8)}")
        worst = max(radii)
        if worst > target:
            raise PrecisionNotReached(f"radius {mp.nstr(worst, 3)} above 1e-{digits} at {prec} bits")
        return [(z, r, is_real) for (z, is_real), r in zip(placed, radii, strict=True)]


def _solve_with_escalation(factor: sp.Poly, digits: int) -> tuple[list[tuple[mp.mpc, mp.mpf, bool]], int]:
    for attempt in Retrying(
        stop=stop_after_attempt(MAX_DOUBLINGS),
        retry=retry_if_exception_type((PrecisionNotReached, NoConvergence)),
        reraise=True,
    ):
        with attempt:
            prec = START_PREC << (attempt.retry_state.attempt_number - 1)
            if attempt.retry_state.attempt_number > 1:
                logger.info(f"Escalating working precision to {prec} bits (degree {factor.degree()})")
            return _solve_factor(factor, digits, prec), prec
    raise AssertionError("unreachable")


def all_roots(poly: FlowPolynomial, digits: int = 50) -> RootSet:
    """Every complex root of poly, each in a disc of radius <= 10^-digits.

    Args:
        poly: Nonconstant integer polynomial
        digits: Requested decimal digits

    Returns:
        RootSet ordered by real part, then imaginary part
    """
    if poly.degree < 1:
        raise DegeneratePolynomialError(f"constant polynomial {poly} has no roots")
    _, factors = sp.sqf_list(poly.to_sympy())
    roots: list[RootInterval] = []
    working: dict[int, int] = {}
    for factor, multiplicity in factors:
        factor = sp.Poly(factor, Q)
        solved, prec = _solve_with_escalation(factor, digits)
        working[factor.degree()] = prec
        roots.extend(RootInterval(z, r, multiplicity, is_real) for z, r, is_real in solved)
    roots.sort(key=lambda r: (r.real, r.imag))
    logger.info(f"Found {len(roots)} distinct roots of a degree-{poly.degree} polynomial")
    return RootSet(roots=roots, digits=digits, degree=poly.degree, working_prec=working)
