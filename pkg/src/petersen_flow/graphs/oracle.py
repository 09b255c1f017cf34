"""
Brute-force subset-expansion oracle for flow and Potts polynomials of small multigraphs.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np
import sympy as sp

from petersen_flow.config.settings import RunConfig, settings
from petersen_flow.exceptions import GraphDomainError, OracleBudgetError
from petersen_flow.graphs.petersen import GPGraph, Multigraph
from petersen_flow.polynomials import Q, FlowPolynomial

logger = logging.getLogger(__name__)

CHUNK_BITS = 16


def _histogram_chunk(
    vertex_count: int, edges: tuple[tuple[int, int], ...], start: int, stop: int
) -> np.ndarray:
    """Count subsets in [start, stop) by (|E'|, components)."""
    m = len(edges)
    masks = np.arange(start, stop, dtype=np.int64)
    bits = np.array([(masks >> e) & 1 for e in range(m)], dtype=bool).reshape(m, masks.size)
    labels = np.tile(np.arange(vertex_count, dtype=np.int64), (masks.size, 1))

    # min-label propagation along selected edges until stable
    changed = True
    while changed:
        changed = False
        for e, (u, v) in enumerate(edges):
            sel = bits[e]
            low = np.minimum(labels[:, u], labels[:, v])
            upd_u = sel & (labels[:, u] != low)
            upd_v = sel & (labels[:, v] != low)
            if upd_u.any() or upd_v.any():
                changed = True
                labels[upd_u, u] = low[upd_u]
                labels[upd_v, v] = low[upd_v]

    components = (labels == np.arange(vertex_count)).sum(axis=1)
    sizes = bits.sum(axis=0)
    index = sizes * (vertex_count + 1) + components
    hist: np.ndarray = np.bincount(index, minlength=(m + 1) * (vertex_count + 1))
    return hist.reshape(m + 1, vertex_count + 1)


def subset_histogram(
    g: Multigraph, config: RunConfig | None = None, jobs: int | None = None
) -> np.ndarray:
    """Return counts[s, c] of edge subsets with s edges and c connected components.

    Args:
        g: Input multigraph; parallel edges are distinct slots
        config: Run configuration (edge budget, job count)
        jobs: Worker processes, overriding the configuration

    Returns:
        Integer array of shape (|E| + 1, |V| + 1)
    """
    config = config or settings
    if g.edge_count > config.oracle_edge_budget:
        raise OracleBudgetError(g.edge_count, config.oracle_edge_budget)

    total = 1 << g.edge_count
    step = 1 << CHUNK_BITS
    ranges = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    worker = partial(_histogram_chunk, g.vertex_count, g.edges)
    workers = jobs or config.jobs

    logger.debug(f"Subset oracle: {total} subsets in {len(ranges)} chunks, {workers} jobs")
    hist = np.zeros((g.edge_count + 1, g.vertex_count + 1), dtype=np.int64)
    if workers > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(worker, *zip(*ranges, strict=True)):
                hist += part
    else:
        for lo, hi in ranges:
            hist += worker(lo, hi)
    return hist


def _as_multigraph(g: GPGraph | Multigraph) -> Multigraph:
    return g.multigraph if isinstance(g, GPGraph) else g


def flow_poly_bruteforce(
    g: GPGraph | Multigraph, config: RunConfig | None = None, jobs: int | None = None
) -> FlowPolynomial:
    """Φ_G(Q) = Σ_{E'⊆E} (-1)^{|E|-|E'|} Q^{|E'|-|V|+k(E')}, exactly."""
    mg = _as_multigraph(g)
    hist = subset_histogram(mg, config, jobs)
    m, v = mg.edge_count, mg.vertex_count
    coefficients = [0] * (m + 1)
    for s, c in zip(*np.nonzero(hist), strict=True):
        count = int(hist[s, c])
        coefficients[int(s) - v + int(c)] += -count if (m - s) % 2 else count
    flow = FlowPolynomial(tuple(coefficients))
    logger.info(f"Brute-force flow polynomial: {m} edges, degree {flow.degree}")
    return flow


def potts_bruteforce(
    g: GPGraph | Multigraph, config: RunConfig | None = None, jobs: int | None = None
) -> dict[tuple[int, int], int]:
    """Z_G(Q, v) = Σ_{E'⊆E} Q^{k(E')} v^{|E'|} as {(power of Q, power of v): coefficient}."""
    hist = subset_histogram(_as_multigraph(g), config, jobs)
    return {(int(c), int(s)): int(hist[s, c]) for s, c in zip(*np.nonzero(hist), strict=True)}


def flow_from_potts(
    table: dict[tuple[int, int], int], edge_count: int, vertex_count: int
) -> FlowPolynomial:
    """Specialise Z_G(Q, v) to v = -Q with the (-1)^{|E|} Q^{-|V|} prefactor."""
    coefficients = [0] * (edge_count + 1)
    for (qp, vp), count in table.items():
        sign = -1 if (edge_count + vp) % 2 else 1
        coefficients[qp + vp - vertex_count] += sign * count
    return FlowPolynomial(tuple(coefficients))


def flow_poly_closed_gn1(n: int) -> FlowPolynomial:
    """Closed form for the cyclic ladder G(n, 1)."""
    if n < 3:
        raise GraphDomainError(f"closed form requires n >= 3, got {n}")
    expr = (Q**2 - 3 * Q + 1) * (-1) ** n + (Q - 1) * (Q - 3) ** n + (Q - 2) ** n
    return FlowPolynomial.from_sympy(sp.expand(expr))
