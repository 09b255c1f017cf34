"""
Leading eigenvalues of the deflated sectors of T̂ at a complex point.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.linalg import ArpackNoConvergence, eigs

from petersen_flow.combinatorics.amplitudes import AmplitudePolynomial, parse_diagram, sector_amplitude
from petersen_flow.config.settings import RunConfig, settings
from petersen_flow.exceptions import GraphDomainError
from petersen_flow.transfer.block import TransferBlock
from petersen_flow.transfer.builder import BlockBuilder
from petersen_flow.transfer.evaluation import ScalarKind, evaluate

logger = logging.getLogger(__name__)

TRIVIAL = "trivial"
REAL_SNAP = 1e-12

# (ℓ, λ label) or (k+1, "trivial")
SectorKey = tuple[int, str]
# (sector key, 0 for mu1 or 1 for mu2)
EigenId = tuple[SectorKey, int]


def sector_key(block: TransferBlock) -> SectorKey:
    return (block.l, block.lam.label())


def key_amplitude(k: int, key: SectorKey) -> AmplitudePolynomial:
    """Weight carried by a sector key in the complete decomposition."""
    l, label = key
    if label == TRIVIAL:
        return sector_amplitude(k, k + 1, None)
    return sector_amplitude(k, l, parse_diagram(label))


def format_key(key: SectorKey) -> str:
    l, label = key
    return TRIVIAL if label == TRIVIAL else f"{l}:{label}"


@dataclass
class SectorSpectrum:
    """Two largest-modulus eigenvalues of one sector."""

    key: SectorKey
    mu1: complex
    mu2: complex | None
    residual: float
    dimension: int
    converged: bool = True


@dataclass
class SpectrumSample:
    """Per-sector leading eigenvalues of T̂ at one q."""

    k: int
    q: complex
    sectors: dict[SectorKey, SectorSpectrum] = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        return all(s.converged for s in self.sectors.values())

    def ranked_ids(self) -> list[tuple[EigenId, complex]]:
        """All reported eigenvalues with their identities, largest modulus first."""
        values = []
        for s in self.sectors.values():
            values.append(((s.key, 0), s.mu1))
            if s.mu2 is not None:
                values.append(((s.key, 1), s.mu2))
        return sorted(values, key=lambda kv: -abs(kv[1]))

    def ranked(self) -> list[tuple[SectorKey, complex]]:
        """All reported eigenvalues, largest modulus first."""
        return [(ident[0], mu) for ident, mu in self.ranked_ids()]

    def top_two(self) -> tuple[EigenId, ...]:
        return tuple(ident for ident, _ in self.ranked_ids()[:2])

    def dominant(self) -> SectorSpectrum:
        return max(self.sectors.values(), key=lambda s: abs(s.mu1))

    def modulus(self, key: SectorKey) -> float:
        return abs(self.sectors[key].mu1)


def _snap(mu: complex, real_q: bool) -> complex:
    if real_q and abs(mu.imag) <= REAL_SNAP * max(1.0, abs(mu)):
        return complex(mu.real, 0.0)
    return complex(mu)


def _dense_top_two(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    values, vectors = np.linalg.eig(matrix)
    order = np.argsort(-np.abs(values), kind="stable")[:2]
    return values[order], vectors[:, order]


def leading_eigs_block(
    block: TransferBlock, q: complex, config: RunConfig | None = None
) -> SectorSpectrum:
    """Top two eigenvalues of T̂(q) on one deflated block."""
    config = config or settings
    key = sector_key(block)
    d = block.dimension
    if d == 0:
        raise GraphDomainError(f"{block.label()} is empty")
    dense = d <= max(config.dense_threshold, 3)
    evaluated = evaluate(block, q, ScalarKind.COMPLEX, normalised=True, dense=dense, config=config)
    matrix = evaluated.matrix
    converged = True
    if dense:
        values, vectors = _dense_top_two(matrix)
    else:
        try:
            values, vectors = eigs(matrix, k=2, which="LM", tol=config.eig_tol)
        except ArpackNoConvergence as exc:
            logger.warning(f"ARPACK did not converge for {block.label()} at q={q}")
            values, vectors = exc.eigenvalues, exc.eigenvectors
            converged = False
            if len(values) == 0:
                return SectorSpectrum(key, complex("nan"), None, float("inf"), d, False)
        order = np.argsort(-np.abs(values), kind="stable")
        values, vectors = values[order], vectors[:, order]

    mu1 = complex(values[0])
    x = vectors[:, 0]
    scale = max(abs(mu1), 1.0) * float(np.linalg.norm(x))
    residual = float(np.linalg.norm(matrix @ x - mu1 * x)) / scale
    if residual > config.eig_tol * 1e3:
        logger.warning(f"{block.label()} at q={q}: residual {residual:.2e}")
        converged = False
    real_q = abs(complex(q).imag) == 0.0
    mu2 = _snap(complex(values[1]), real_q) if len(values) > 1 else None
    return SectorSpectrum(key, _snap(mu1, real_q), mu2, residual, d, converged)


def trivial_spectrum(k: int) -> SectorSpectrum:
    """The trivial eigenvalue (-1)^k of T̂ as a pseudo-sector."""
    return SectorSpectrum((k + 1, TRIVIAL), complex((-1) ** k), None, 0.0, 1)


def leading_eigs(
    k: int,
    q: complex,
    sectors: Iterable[TransferBlock] | None = None,
    builder: BlockBuilder | None = None,
    config: RunConfig | None = None,
) -> SpectrumSample:
    """SpectrumSample over the deflated sectors plus the trivial pseudo-sector.

    Args:
        k: Strip width
        q: Nonzero complex point
        sectors: Blocks to use; defaults to the complete-decomposition sectors
        builder: Block provider
        config: Run configuration
    """
    if q == 0:
        raise GraphDomainError("T̂ is singular at Q = 0")
    config = config or settings
    if sectors is None:
        sectors = (builder or BlockBuilder(config)).complete_sectors(k)
    sample = SpectrumSample(k=k, q=complex(q))
    for block in sectors:
        if block.dimension == 0:
            continue
        spectrum = leading_eigs_block(block, q, config)
        sample.sectors[spectrum.key] = spectrum
    trivial = trivial_spectrum(k)
    sample.sectors[trivial.key] = trivial
    logger.debug(f"Spectrum k={k} q={q}: dominant {format_key(sample.dominant().key)}")
    return sample
