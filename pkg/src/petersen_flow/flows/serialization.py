"""
JSON and text views of flow polynomials, and the shipped G(119,7) fixture.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cache, cached_property
from importlib import resources
from pathlib import Path
from typing import Any

import sympy as sp
import yaml

from petersen_flow.exceptions import GraphDomainError
from petersen_flow.flows.assembler import AssembledFlow
from petersen_flow.polynomials import Q, FlowPolynomial

FIXTURE = "phi_g119_7.yaml"
SPLIT_ROOTS = (1, 2, 3)


def flow_to_json(flow: AssembledFlow) -> dict[str, Any]:
    """{"n", "k", "method", "coefficients"} with decimal-string coefficients."""
    return {
        "n": flow.graph.n,
        "k": flow.graph.k,
        "method": str(flow.method),
        "coefficients": [str(c) for c in flow.poly.coefficients],
        "provenance": {name: [key[0], key[1], list(key[2]), key[3]] for name, key in flow.provenance.items()},
    }


def poly_from_json(data: str | dict[str, Any]) -> tuple[FlowPolynomial, dict[str, Any]]:
    """Parse a flow JSON document; returns the polynomial and the raw payload."""
    payload = json.loads(data) if isinstance(data, str) else data
    if "coefficients" not in payload:
        raise GraphDomainError("flow document has no coefficients")
    return FlowPolynomial(tuple(int(c) for c in payload["coefficients"])), payload


def read_poly(path: Path) -> FlowPolynomial:
    """Load a polynomial from a flow JSON file."""
    poly, _ = poly_from_json(path.read_text())
    return poly


@dataclass
class FactoredView:
    """Φ split as Π (Q - r) over integer roots r in {1, 2, 3}, times a cofactor."""

    roots: tuple[int, ...]
    cofactor: FlowPolynomial

    def expand(self) -> FlowPolynomial:
        out = self.cofactor
        for r in self.roots:
            out = out * FlowPolynomial((-r, 1))
        return out

    def __str__(self) -> str:
        linear = "".join(f"(Q-{r})" for r in self.roots)
        return f"{linear} * P_{self.cofactor.degree}(Q)\nP_{self.cofactor.degree}(Q) = {self.cofactor}"


def factored_view(poly: FlowPolynomial) -> FactoredView:
    """Split off (Q-1)(Q-2) and, when it divides, (Q-3)."""
    current = poly.to_sympy()
    roots: list[int] = []
    for r in SPLIT_ROOTS:
        if current.is_zero or current.eval(r) != 0:
            continue
        current, remainder = sp.div(current, sp.Poly(Q - r, Q, domain="ZZ"))
        if not remainder.is_zero:
            raise ArithmeticError(f"Q-{r} left remainder {remainder.as_expr()}")
        roots.append(r)
    return FactoredView(tuple(roots), FlowPolynomial.from_sympy(current))


@dataclass
class Fixture:
    """The published G(119,7) flow polynomial with its check values."""

    n: int
    k: int
    cofactor: FlowPolynomial
    checks: dict[int, int]

    @cached_property
    def poly(self) -> FlowPolynomial:
        return FactoredView(SPLIT_ROOTS, self.cofactor).expand()


@cache
def load_fixture() -> Fixture:
    """Read petersen_flow/data/phi_g119_7.yaml; coefficients a_i enter as (-1)^(i+1) a_i."""
    text = resources.files("petersen_flow.data").joinpath(FIXTURE).read_text()
    data = yaml.safe_load(text)
    a = [int(c) for c in data["coefficients"]]
    cofactor = FlowPolynomial(tuple(c if i % 2 else -c for i, c in enumerate(a)))
    checks = {int(q): int(v) for q, v in data["checks"].items()}
    return Fixture(int(data["graph"]["n"]), int(data["graph"]["k"]), cofactor, checks)
