"""
Assembly of Φ_{G(nk,k)} from block traces and amplitudes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import StrEnum

import sympy as sp

from petersen_flow.combinatorics.amplitudes import alpha, sector_amplitude
from petersen_flow.config.settings import RunConfig, settings
from petersen_flow.exceptions import (
    GraphDomainError,
    NonIntegerCoefficientError,
    RawCompleteMismatchError,
)
from petersen_flow.graphs.oracle import flow_poly_bruteforce
from petersen_flow.graphs.petersen import GPGraph, build
from petersen_flow.polynomials import Q, FlowPolynomial, TraceKey
from petersen_flow.traces.engine import TraceEngine
from petersen_flow.transfer.builder import BlockBuilder

logger = logging.getLogger(__name__)

MAX_COMPLETE_K = 7


class FlowMethod(StrEnum):
    COMPLETE = "complete"
    RAW = "raw"
    BRUTE = "brute"


@dataclass
class AssembledFlow:
    """A flow polynomial together with how it was obtained."""

    graph: GPGraph
    poly: FlowPolynomial
    method: FlowMethod
    provenance: dict[str, TraceKey] = field(default_factory=dict)

    @property
    def layers(self) -> int:
        return self.graph.n // self.graph.k


def _graph_for(k: int, n: int) -> GPGraph:
    if n < 2:
        raise GraphDomainError(f"G(nk, k) needs at least two layers, got n={n}")
    return build(n * k, k)


def _integral(total: sp.Poly, label: str) -> FlowPolynomial:
    try:
        return FlowPolynomial.from_sympy(total)
    except ValueError as exc:
        raise NonIntegerCoefficientError(f"{label}: {total.as_expr()}") from exc


class FlowAssembler:
    """Combines block traces into flow polynomials."""

    def __init__(
        self,
        config: RunConfig | None = None,
        builder: BlockBuilder | None = None,
        engine: TraceEngine | None = None,
    ):
        self.config = config or settings
        self.builder = builder or BlockBuilder(self.config)
        self.engine = engine or TraceEngine(self.config)

    def assemble_complete(self, k: int, n: int, cross_check: bool = False) -> AssembledFlow:
        """Σ_{ℓ<k} Σ_λ α_{ℓ,λ} tr + β_k tr(k,(k)) + γ_{k+1} (-1)^{nk} over deflated blocks."""
        if not 1 <= k <= MAX_COMPLETE_K:
            raise GraphDomainError(f"complete decomposition is available for 1 <= k <= 7, got {k}")
        graph = _graph_for(k, n)
        total = sp.Poly(0, Q, domain="QQ")
        provenance: dict[str, TraceKey] = {}
        for block in self.builder.complete_sectors(k, symmetric_only=False):
            trace = self.engine.trace_polynomial(block, n)
            weight = sector_amplitude(k, block.l, block.lam)
            total += weight.poly * trace.to_sympy()
            provenance[f"{block.l}:{block.lam}"] = trace.key
        trivial_sign = -1 if (n * k) % 2 else 1
        total += sector_amplitude(k, k + 1, None).poly * trivial_sign
        flow = AssembledFlow(graph, _integral(total, f"G({n * k},{k})"), FlowMethod.COMPLETE, provenance)
        logger.info(f"Assembled G({n * k},{k}) by complete decomposition: degree {flow.poly.degree}")
        if cross_check:
            raw = self.assemble_raw(k, n)
            if raw.poly != flow.poly:
                raise RawCompleteMismatchError(f"G({n * k},{k}): raw {raw.poly} != complete {flow.poly}")
        return flow

    def assemble_raw(self, k: int, n: int) -> AssembledFlow:
        """Σ_{ℓ=0}^{k+1} Σ_λ α_{ℓ,λ}·tr(undeflated block)."""
        graph = _graph_for(k, n)
        total = sp.Poly(0, Q, domain="QQ")
        provenance: dict[str, TraceKey] = {}
        for block in self.builder.raw_sectors(k):
            trace = self.engine.trace_polynomial(block, n)
            total += alpha(block.l, block.lam).poly * trace.to_sympy()
            provenance[f"{block.l}:{block.lam}"] = trace.key
        flow = AssembledFlow(graph, _integral(total, f"G({n * k},{k})"), FlowMethod.RAW, provenance)
        logger.info(f"Assembled G({n * k},{k}) from raw traces: degree {flow.poly.degree}")
        return flow

    def assemble(self, graph_n: int, k: int, method: FlowMethod = FlowMethod.COMPLETE) -> AssembledFlow:
        """Φ of G(graph_n, k) by the requested method."""
        if method is FlowMethod.BRUTE:
            graph = build(graph_n, k)
            return AssembledFlow(graph, flow_poly_bruteforce(graph, self.config), FlowMethod.BRUTE)
        if graph_n % k:
            raise GraphDomainError(f"transfer methods need k | n, got n={graph_n}, k={k}")
        layers = graph_n // k
        if method is FlowMethod.COMPLETE and k > MAX_COMPLETE_K:
            logger.warning(f"k={k} is past the complete decomposition range; using raw traces")
            method = FlowMethod.RAW
        if method is FlowMethod.COMPLETE:
            return self.assemble_complete(k, layers)
        return self.assemble_raw(k, layers)
