"""
Exact consistency checks run on every assembled flow polynomial.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache

import sympy as sp

from petersen_flow.flows.assembler import AssembledFlow
from petersen_flow.graphs.petersen import GPGraph, is_bipartite
from petersen_flow.polynomials import Q, FlowPolynomial

logger = logging.getLogger(__name__)

WAKELIN_UPPER = Fraction(32, 27)
JACKSON_CUBIC = Q**3 - 9 * Q**2 + 29 * Q - 32
POSITIVITY_POINTS = (4, 5, 6)
LADDER_MAX = 10


@dataclass
class CheckResult:
    """Outcome of one validation check."""

    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    """All checks run on one flow polynomial."""

    graph: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))


@cache
def jackson_delta_interval() -> tuple[Fraction, Fraction]:
    """Rational isolating interval of the root of Q^3 - 9Q^2 + 29Q - 32 in (2, 3)."""
    poly = sp.Poly(JACKSON_CUBIC, Q)
    for (lo, hi), _ in poly.intervals(eps=sp.Rational(1, 10**30)):
        if 2 < lo and hi < 3:
            return Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))
    raise ArithmeticError("cubic has no root in (2, 3)")


def _count_roots(poly: sp.Poly, lo: Fraction | None, hi: Fraction | None) -> int:
    inf = sp.Rational(lo.numerator, lo.denominator) if lo is not None else None
    sup = sp.Rational(hi.numerator, hi.denominator) if hi is not None else None
    return int(poly.count_roots(inf, sup))


def _simple_root(flow: FlowPolynomial, q: int) -> bool:
    return flow(q) == 0 and flow.derivative()(q) != 0


def check_expansion(report: ValidationReport, flow: FlowPolynomial, graph: GPGraph) -> None:
    n = graph.n
    report.add("degree", flow.degree == n + 1, f"degree {flow.degree}, expected {n + 1}")
    report.add("leading", flow.leading == 1, f"leading coefficient {flow.leading}")
    mg = graph.multigraph
    if not mg.is_simple():
        return
    report.add("expansion-N", flow.coefficient(n) == -3 * n, f"Q^{n}: {flow.coefficient(n)}")
    if mg.girth() < 5:
        return
    wanted = {n - 1: n * (9 * n - 7) // 2, n - 2: -n * (3 * n - 2) * (3 * n - 5) // 2}
    for power, value in wanted.items():
        got = flow.coefficient(power)
        report.add(f"expansion-N{power - n}", got == value, f"Q^{power}: {got}, expected {value}")


def check_wakelin(report: ValidationReport, flow: FlowPolynomial) -> None:
    poly = flow.to_sympy()
    report.add("wakelin-simple-1", _simple_root(flow, 1), f"Φ(1)={flow(1)}")
    below = _count_roots(poly, None, Fraction(1))
    window = _count_roots(poly, Fraction(1), WAKELIN_UPPER)
    report.add("wakelin-no-roots", below == 1 and window == 1, f"roots <=1: {below}, in [1,32/27]: {window}")
    d = flow.degree
    report.add(
        "wakelin-sign",
        (flow(0) > 0) == (d % 2 == 0) and (flow(WAKELIN_UPPER) > 0) == (d % 2 == 1),
        f"Φ(0)={flow(0)}",
    )


def check_jackson(report: ValidationReport, flow: FlowPolynomial, graph: GPGraph) -> None:
    # needs a 3-connected cubic graph; G(2k, k) has a 2-cut around its doubled chord
    if not graph.multigraph.is_simple():
        return
    report.add("jackson-simple-2", _simple_root(flow, 2), f"Φ(2)={flow(2)}")
    lo, _ = jackson_delta_interval()
    count = _count_roots(flow.to_sympy(), Fraction(2), lo)
    report.add("jackson-gap", count == 1, f"roots in [2, delta): {count}")


def check_bipartite(report: ValidationReport, flow: FlowPolynomial, graph: GPGraph) -> None:
    bipartite = is_bipartite(graph)
    report.add(
        "bipartite-3",
        (flow(3) == 0) != bipartite,
        f"Φ(3)={flow(3)}, bipartite={bipartite}",
    )


def check_positivity(report: ValidationReport, flow: FlowPolynomial, graph: GPGraph) -> None:
    # G(5,2) has no Tait colouring, so its only failure is Φ(4) = 0
    snark = (graph.n, graph.k) == (5, 2)
    for q in POSITIVITY_POINTS:
        if snark and q == 4:
            report.add("positive-4", flow(4) == 0, f"Φ(4)={flow(4)}")
            continue
        report.add(f"positive-{q}", flow(q) > 0, f"Φ({q})={flow(q)}")
    first = next((q for q in range(2, LADDER_MAX + 1) if flow(q) > 0), None)
    ladder = first is None or all(flow(q) > 0 for q in range(first, LADDER_MAX + 1))
    report.add("positivity-ladder", ladder, f"first positive integer {first}")


def check_alternating(report: ValidationReport, flow: FlowPolynomial) -> None:
    d = flow.degree
    ok = all(c != 0 and (c > 0) == ((d - i) % 2 == 0) for i, c in enumerate(flow.coefficients))
    report.add("alternating-signs", ok)


def validate(flow: AssembledFlow) -> ValidationReport:
    """Run every check; failures are itemised, never raised."""
    return validate_poly(flow.poly, flow.graph)


def validate_poly(poly: FlowPolynomial, graph: GPGraph) -> ValidationReport:
    """The same battery for a polynomial that did not come from the assembler."""
    report = ValidationReport(graph=f"G({graph.n},{graph.k})")
    check_expansion(report, poly, graph)
    check_wakelin(report, poly)
    check_jackson(report, poly, graph)
    check_bipartite(report, poly, graph)
    check_positivity(report, poly, graph)
    check_alternating(report, poly)
    level = logging.INFO if report.passed else logging.WARNING
    logger.log(level, f"Validation of {report.graph}: {len(report.failures)} failures")
    return report
