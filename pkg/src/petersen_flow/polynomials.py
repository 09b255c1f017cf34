"""
Exact polynomial value types in the variable Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import sympy as sp

Q = sp.Symbol("Q")
MU = sp.Symbol("mu")

# Integer and rational polynomial rings in Q used for operator weights
ZZ_Q = sp.ZZ[Q]
QQ_Q = sp.QQ[Q]
WEIGHTS = ZZ_Q.ring
Q_WEIGHT = WEIGHTS.gens[0]

# (k, ell, partition parts, n)
TraceKey = tuple[int, int, tuple[int, ...], int]


def weight_terms(weight: Any) -> dict[int, Fraction]:
    """{power: coefficient} of a ZZ[Q] or QQ[Q] ring element."""
    out: dict[int, Fraction] = {}
    for (power,), c in weight.terms():
        num = getattr(c, "numerator", c)
        den = getattr(c, "denominator", 1)
        out[int(power)] = Fraction(int(num), int(den))
    return out


def _strip(coefficients: tuple[Any, ...]) -> tuple[Any, ...]:
    end = len(coefficients)
    while end > 1 and coefficients[end - 1] == 0:
        end -= 1
    return coefficients[:end] if end else (0,)


def horner(coefficients: tuple[Any, ...], q: Any) -> Any:
    """Evaluate ascending coefficients at q; exact for int/Fraction inputs."""
    acc: Any = 0
    for c in reversed(coefficients):
        acc = acc * q + c
    return acc


def sympy_to_fractions(poly: sp.Poly) -> tuple[Fraction, ...]:
    """Ascending Fraction coefficients of a univariate sympy polynomial."""
    coeffs = poly.all_coeffs()[::-1] if not poly.is_zero else [0]
    return tuple(Fraction(int(sp.numer(c)), int(sp.denom(c))) for c in coeffs)


@dataclass(frozen=True)
class FlowPolynomial:
    """Flow polynomial with exact integer coefficients, ascending in Q."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", _strip(tuple(int(c) for c in self.coefficients)))

    @property
    def degree(self) -> int:
        if self.coefficients == (0,):
            return 0
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1]

    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    def __call__(self, q: Any) -> Any:
        return horner(self.coefficients, q)

    def coefficient(self, power: int) -> int:
        if 0 <= power < len(self.coefficients):
            return self.coefficients[power]
        return 0

    def to_sympy(self) -> sp.Poly:
        return sp.Poly(list(reversed(self.coefficients)), Q, domain="ZZ")

    @classmethod
    def from_sympy(cls, poly: sp.Poly | sp.Expr) -> FlowPolynomial:
        poly = sp.Poly(poly, Q)
        fracs = sympy_to_fractions(poly)
        if any(f.denominator != 1 for f in fracs):
            raise ValueError("flow polynomials have integer coefficients")
        return cls(tuple(f.numerator for f in fracs))

    def __mul__(self, other: FlowPolynomial) -> FlowPolynomial:
        return FlowPolynomial.from_sympy(self.to_sympy() * other.to_sympy())

    def __add__(self, other: FlowPolynomial) -> FlowPolynomial:
        return FlowPolynomial.from_sympy(self.to_sympy() + other.to_sympy())

    def __sub__(self, other: FlowPolynomial) -> FlowPolynomial:
        return FlowPolynomial.from_sympy(self.to_sympy() - other.to_sympy())

    def derivative(self) -> FlowPolynomial:
        return FlowPolynomial(tuple(i * c for i, c in enumerate(self.coefficients))[1:] or (0,))

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr())


@dataclass(frozen=True)
class TracePolynomial:
    """tr(T^n) of one transfer block as an exact polynomial in Q."""

    key: TraceKey
    coefficients: tuple[Fraction, ...]
    checksum_points: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coefficients", _strip(tuple(Fraction(c) for c in self.coefficients))
        )

    @property
    def degree(self) -> int:
        if all(c == 0 for c in self.coefficients):
            return 0
        return len(self.coefficients) - 1

    def __call__(self, q: Any) -> Any:
        return horner(self.coefficients, q)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def to_sympy(self) -> sp.Poly:
        return sp.Poly(
            [sp.Rational(c.numerator, c.denominator) for c in reversed(self.coefficients)],
            Q,
            domain="QQ",
        )
