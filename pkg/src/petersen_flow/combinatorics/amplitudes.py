"""
Young diagrams and the eigenvalue amplitudes attached to the transfer-matrix sectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import comb, factorial, prod
from typing import Any

import sympy as sp
from sympy.utilities.iterables import partitions as _sympy_partitions

from petersen_flow.combinatorics.counting import dim_marked, dim_marked_nosingleton, n_trivial
from petersen_flow.polynomials import Q, horner, sympy_to_fractions


@dataclass(frozen=True, order=True)
class YoungDiagram:
    """Integer partition λ ⊢ ℓ, parts weakly decreasing."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts if p != 0)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {self.parts}")
        if any(a < b for a, b in zip(parts, parts[1:], strict=False)):
            raise ValueError(f"parts {self.parts} are not weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @property
    def ell(self) -> int:
        return sum(self.parts)

    def row(self, i: int) -> int:
        """λ_i with 1-based rows, zero past the last part."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def conjugate(self) -> YoungDiagram:
        if not self.parts:
            return self
        return YoungDiagram(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def hooks(self) -> list[int]:
        conj = self.conjugate().parts
        return [
            (row - j) + (conj[j] - i) - 1
            for i, row in enumerate(self.parts)
            for j in range(row)
        ]

    def is_symmetric_row(self) -> bool:
        return len(self.parts) <= 1

    def label(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def __str__(self) -> str:
        return self.label()


def parse_diagram(text: str) -> YoungDiagram:
    """Parse "(3,1)", "3,1" or "()" into a diagram."""
    body = text.strip().strip("()[] ")
    if not body:
        return YoungDiagram(())
    return YoungDiagram(tuple(int(p) for p in body.split(",")))


@cache
def youngs(l: int) -> tuple[YoungDiagram, ...]:
    """All λ ⊢ ℓ in reverse-lexicographic order: (ℓ), (ℓ-1,1), ..., (1^ℓ)."""
    if l < 0:
        raise ValueError("l must be non-negative")
    if l == 0:
        return (YoungDiagram(()),)
    found = [
        YoungDiagram(tuple(sorted((p for p, m in part.items() for _ in range(m)), reverse=True)))
        for part in _sympy_partitions(l)
    ]
    return tuple(sorted(found, reverse=True))


def young_dim(lam: YoungDiagram) -> int:
    """dim λ by the hook length formula."""
    return factorial(lam.ell) // prod(lam.hooks())


@dataclass(frozen=True)
class AmplitudePolynomial:
    """Amplitude in Q with exact rational coefficients."""

    name: str
    poly: sp.Poly

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return sympy_to_fractions(self.poly)

    @property
    def degree(self) -> int:
        return int(self.poly.degree())

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def __call__(self, q: Any) -> Any:
        return horner(self.coefficients, q)

    def as_expr(self) -> sp.Expr:
        return self.poly.as_expr()

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "coefficients": [str(c) for c in self.coefficients]}


def _poly(expr: sp.Expr) -> sp.Poly:
    return sp.Poly(sp.expand(expr), Q, domain="QQ")


@cache
def alpha(l: int, lam: YoungDiagram) -> AmplitudePolynomial:
    """α_{ℓ,λ} = (dim λ / ℓ!) Π_{i=0}^{ℓ-1} (Q - i - λ_{ℓ-i})."""
    if lam.ell != l:
        raise ValueError(f"diagram {lam} is not a partition of {l}")
    expr = sp.Rational(young_dim(lam), factorial(l)) * sp.Mul(
        *[Q - i - lam.row(l - i) for i in range(l)]
    )
    return AmplitudePolynomial(f"alpha_{l},{lam}", _poly(expr))


@cache
def beta(l: int) -> AmplitudePolynomial:
    """β_ℓ = Σ_i (-1)^{ℓ-i} C(ℓ, i) Q(Q-1)...(Q-i+1)."""
    expr = sum(
        ((-1) ** (l - i) * comb(l, i) * sp.Mul(*[Q - j for j in range(i)]) for i in range(l + 1)), sp.Integer(0)
    )
    return AmplitudePolynomial(f"beta_{l}", _poly(expr))


@cache
def gamma(k: int) -> AmplitudePolynomial:
    """γ_{k+1} = β_{k+1} + Σ_{ℓ=1}^{k} Ñ_{k,1}(ℓ) β_ℓ, the weight of the trivial eigenvalue."""
    expr = beta(k + 1).as_expr() + sum(
        (n_trivial(k, l) * beta(l).as_expr() for l in range(1, k + 1)), sp.Integer(0)
    )
    return AmplitudePolynomial(f"gamma_{k + 1}", _poly(expr))


def beta_sum_rule(k: int, *, singletons: bool = True) -> sp.Expr:
    """Σ_ℓ β_ℓ |A_k^{(ℓ)}| / ℓ!, which is Q^k; over Ã_k it is (Q-1)^k instead."""
    dims = dim_marked if singletons else dim_marked_nosingleton
    return sp.expand(
        sum(
            (beta(l).as_expr() * sp.Rational(dims(k, l), factorial(l)) for l in range(k + 1)),
            sp.Integer(0),
        )
    )


def alpha_total(l: int) -> sp.Expr:
    """Σ_λ α_{ℓ,λ} dim λ; equals β_ℓ."""
    return sp.expand(
        sum((alpha(l, lam).as_expr() * young_dim(lam) for lam in youngs(l)), sp.Integer(0))
    )


def sector_amplitude(k: int, l: int, lam: YoungDiagram | None) -> AmplitudePolynomial:
    """Weight of one deflated sector in the complete decomposition of a width-k strip.

    ℓ <= k-1 sectors carry α_{ℓ,λ}; the ℓ = k sector is represented by its symmetric
    block and carries β_k; ℓ = k+1 (or lam None) stands for the trivial eigenvalue.
    """
    if l == k + 1 or lam is None:
        return gamma(k)
    if l == k:
        return beta(k)
    return alpha(l, lam)


def amplitude_table(k: int) -> dict[str, Any]:
    """α_{ℓ,λ} for ℓ <= k+1, β_0..β_{k+1} and γ_{k+1} as JSON-ready records."""
    return {
        "k": k,
        "alpha": [
            {"l": l, "lambda": list(lam.parts), **alpha(l, lam).to_json()}
            for l in range(k + 2)
            for lam in youngs(l)
        ],
        "beta": [beta(l).to_json() for l in range(k + 2)],
        "gamma": gamma(k).to_json(),
    }
