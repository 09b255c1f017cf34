"""
Acceptance suites behind `petersen-flow verify`. Each suite returns (item, passed, detail)
rows for the scoreboard.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Callable
from fractions import Fraction

import sympy as sp

from petersen_flow.config.settings import RunConfig

logger = logging.getLogger(__name__)

SuiteRows = list[tuple[str, bool, str]]

# G(n, k) with at most 24 edges; each is compared against the subset oracle
ORACLE_GRAPHS: tuple[tuple[int, int], ...] = (
    (3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (8, 1), (4, 2), (6, 2), (8, 2), (6, 3),
)
CLOSED_FORM_RANGE = range(3, 13)
SUM_RULE_RANGE = range(9)
ALPHA_RANGE = range(1, 9)
STRUCTURE_RANGE = range(1, 4)
QC_RANGE = range(1, 4)
QC_TOLERANCE = 1e-8
SAMPLE_Q = Fraction(13, 7)

DISTINCT_EIGENVALUES = {1: 3, 2: 7, 3: 36, 4: 229, 5: 1658, 6: 12803, 7: 105934}

# Ascending coefficients of β_ℓ
BETA_TABLE: dict[int, tuple[int, ...]] = {
    4: (1, -24, 29, -10, 1),
    5: (-1, 89, -145, 75, -15, 1),
    6: (1, -415, 814, -545, 160, -21, 1),
    7: (-1, 2372, -5243, 4179, -1575, 301, -28, 1),
}
# Ascending coefficients of γ_{k+1}, keyed by k
GAMMA_TABLE: dict[int, tuple[int, ...]] = {
    4: (-1, 20, -38, 28, -9, 1),
    5: (1, -27, 90, -90, 45, -11, 1),
    6: (-1, 70, -207, 260, -175, 66, -13, 1),
    7: (1, -135, 469, -707, 595, -301, 91, -15, 1),
}
FIXTURE_ROOTS = (5.0000197675, 5.1653424423)
FIXTURE_ROOT_TOLERANCE = 1e-9
FIXTURE_DIGITS = 20


def suite_small_oracle(config: RunConfig) -> SuiteRows:
    from petersen_flow.flows.assembler import FlowAssembler
    from petersen_flow.flows.validation import validate
    from petersen_flow.graphs.oracle import flow_poly_bruteforce
    from petersen_flow.graphs.petersen import build

    assembler = FlowAssembler(config)
    results = []
    for n, k in ORACLE_GRAPHS:
        flow = assembler.assemble(n, k)
        oracle = flow_poly_bruteforce(build(n, k), config)
        report = validate(flow)
        ok = flow.poly == oracle and report.passed
        detail = "" if flow.poly == oracle else f"transfer {flow.poly} != oracle {oracle}"
        detail = detail or ", ".join(c.name for c in report.failures)
        results.append((f"G({n},{k})", ok, detail))
    return results


def suite_closed_form(config: RunConfig) -> SuiteRows:
    from petersen_flow.flows.assembler import FlowAssembler
    from petersen_flow.graphs.oracle import flow_poly_closed_gn1

    assembler = FlowAssembler(config)
    results = []
    for n in CLOSED_FORM_RANGE:
        flow = assembler.assemble_complete(1, n)
        ok = flow.poly == flow_poly_closed_gn1(n)
        results.append((f"G({n},1)", ok, "" if ok else str(flow.poly)))
    return results


def suite_counting(config: RunConfig) -> SuiteRows:
    """Distinct-eigenvalue counts, marked totals and the β sum rules."""
    from petersen_flow.combinatorics.amplitudes import beta_sum_rule
    from petersen_flow.combinatorics.counting import (
        marked_total,
        marked_total_closed,
        marked_total_nosingleton,
        marked_total_nosingleton_closed,
        total_nontrivial,
    )
    from petersen_flow.polynomials import Q

    results = []
    for k, expected in DISTINCT_EIGENVALUES.items():
        got = total_nontrivial(k)
        results.append((f"D~_{k}", got == expected, "" if got == expected else f"{got} != {expected}"))
    for k in SUM_RULE_RANGE:
        ok = marked_total(k) == marked_total_closed(k)
        ok = ok and marked_total_nosingleton(k) == marked_total_nosingleton_closed(k)
        results.append((f"B_{k} closed forms", ok, ""))
        full = sp.expand(beta_sum_rule(k) - Q**k)
        bare = sp.expand(beta_sum_rule(k, singletons=False) - (Q - 1) ** k)
        results.append((f"sum rule Q^{k}", full == 0, "" if full == 0 else str(full)))
        results.append((f"sum rule (Q-1)^{k}", bare == 0, "" if bare == 0 else str(bare)))
    return results


def suite_amplitudes(config: RunConfig) -> SuiteRows:
    """Tabulated β and γ, and Σ_λ α dim λ = β."""
    from petersen_flow.combinatorics.amplitudes import alpha_total, beta, gamma

    results = []
    for l, table in BETA_TABLE.items():
        got = beta(l).coefficients
        results.append((f"beta_{l}", got == table, "" if got == table else str(beta(l).as_expr())))
    for k, table in GAMMA_TABLE.items():
        amp = gamma(k)
        ok = amp.coefficients == table
        results.append((amp.name, ok, "" if ok else str(amp.as_expr())))
    for l in ALPHA_RANGE:
        diff = sp.expand(alpha_total(l) - beta(l).as_expr())
        results.append((f"sum alpha dim = beta_{l}", diff == 0, "" if diff == 0 else str(diff)))
    return results


def suite_fixture(config: RunConfig) -> SuiteRows:
    """The shipped G(119,7) polynomial: check values, JSON round trip, battery and roots."""
    from petersen_flow.flows.serialization import factored_view, load_fixture, poly_from_json
    from petersen_flow.flows.validation import validate_poly
    from petersen_flow.graphs.petersen import build
    from petersen_flow.roots.finder import all_roots

    fixture = load_fixture()
    poly = fixture.poly
    results = []
    for q, value in sorted(fixture.checks.items()):
        got = poly(q)
        results.append((f"Phi({q})", got == value, "" if got == value else str(got)))

    document = json.dumps({"n": fixture.n, "k": fixture.k, "coefficients": [str(c) for c in poly.coefficients]})
    restored, _ = poly_from_json(document)
    view = factored_view(restored)
    ok = restored == poly and view.cofactor == fixture.cofactor and view.expand() == poly
    results.append(("json round trip", ok, f"split roots {view.roots}"))

    report = validate_poly(poly, build(fixture.n, fixture.k))
    results.append(("validation battery", report.passed, ", ".join(c.name for c in report.failures)))

    roots = all_roots(poly, FIXTURE_DIGITS)
    for value in FIXTURE_ROOTS:
        nearest = roots.nearest(value)
        ok = nearest.is_real and abs(nearest.real - value) <= FIXTURE_ROOT_TOLERANCE
        results.append((f"root {value}", ok, f"nearest {nearest.real:.12f}"))
    return results


def suite_structure(config: RunConfig) -> SuiteRows:
    """Deflated dimensions, λ-independence at ℓ = k and a simple spectrum for small k."""
    from petersen_flow.combinatorics.amplitudes import YoungDiagram, youngs
    from petersen_flow.combinatorics.counting import total_nontrivial
    from petersen_flow.polynomials import MU
    from petersen_flow.transfer.block import sector_table
    from petersen_flow.transfer.builder import BlockBuilder
    from petersen_flow.transfer.evaluation import charpoly_at

    builder = BlockBuilder(config)
    results = []
    for k in STRUCTURE_RANGE:
        bad = [
            f"{info.l},{info.lam}"
            for info in sector_table(k)
            if info.lam is not None
            and builder.block(k, info.l, info.lam).dimension != info.deflated_dimension
        ]
        results.append((f"k={k} deflated dimensions", not bad, ", ".join(bad)))

        symmetric = builder.block(k, k, YoungDiagram((k,)))
        reference = sp.sqf_part(charpoly_at(symmetric, SAMPLE_Q)).monic()
        differ = [
            lam.label()
            for lam in youngs(k)
            if sp.sqf_part(charpoly_at(builder.block(k, k, lam), SAMPLE_Q)).monic() != reference
        ]
        ok = not differ and reference.degree() == k
        results.append((f"k={k} full-link spectrum", ok, ", ".join(differ)))

        product = sp.Poly(MU - (-1) ** k, MU, domain=sp.QQ)
        for block in builder.complete_sectors(k, symmetric_only=False):
            product = product * charpoly_at(block, SAMPLE_Q)
        distinct = sp.sqf_part(product).degree()
        ok = distinct == product.degree() == total_nontrivial(k)
        results.append((f"k={k} simple spectrum", ok, f"{distinct} distinct of {product.degree()}"))
    return results


def suite_qc(config: RunConfig) -> SuiteRows:
    from petersen_flow.spectra.qc import REFERENCE_QC, QcFinder

    finder = QcFinder(config)
    results = []
    for k in QC_RANGE:
        result = finder.find_qc(k)
        ok = abs(result.qc - REFERENCE_QC[k]) <= QC_TOLERANCE
        results.append((f"Q_c({k})", ok, result.describe()))
    return results


SUITES: dict[str, Callable[[RunConfig], SuiteRows]] = {
    "counting": suite_counting,
    "amplitudes": suite_amplitudes,
    "structure": suite_structure,
    "closed-form": suite_closed_form,
    "fixture": suite_fixture,
    "qc": suite_qc,
    "small-oracle": suite_small_oracle,
}


def run_suites(names: list[str], config: RunConfig) -> SuiteRows:
    """Rows of every named suite, each item prefixed with its suite."""
    rows = []
    for name in names:
        logger.info(f"Running suite {name}")
        rows.extend((f"{name}: {item}", ok, detail) for item, ok, detail in SUITES[name](config))
    return rows
