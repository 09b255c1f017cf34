"""
Classification of accumulation points of flow zeros from dominant eigenvalues.

A point is isolated when one eigenvalue strictly dominates and its amplitude vanishes
there; it lies on a limiting curve when the two largest moduli coincide.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum

import mpmath as mp
import numpy as np

from petersen_flow.config.settings import RunConfig, settings
from petersen_flow.spectra.eigen import SectorKey, SpectrumSample, format_key, key_amplitude, leading_eigs
from petersen_flow.transfer.builder import BlockBuilder
from petersen_flow.transfer.evaluation import ScalarKind, evaluate

logger = logging.getLogger(__name__)

AMBIGUITY_FACTOR = 1e3
MP_EIG_MAX_DIM = 60
MP_EIG_DPS = 40


class FeatureKind(StrEnum):
    ISOLATED = "isolated-a"
    CURVE = "curve-b"
    UNRESOLVED = "unresolved"


class Parity(StrEnum):
    ALL_N = "all-n"
    ODD_N = "odd-n"
    EVEN_N = "even-n"
    NON_REAL = "non-real"


@dataclass
class LimitingFeature:
    """A limiting point of flow zeros and the sectors that produce it."""

    kind: FeatureKind
    location: complex
    witnesses: tuple[SectorKey, ...]
    parity: Parity | None = None
    detail: str = ""

    def describe(self) -> str:
        names = ", ".join(format_key(w) for w in self.witnesses)
        extra = f" [{self.parity}]" if self.parity else ""
        return f"{self.kind} at {self.location} via {names}{extra}"


def parity_classify(
    mu1: complex, mu2: complex, amp1: float, amp2: float, tol: float = 1e-8
) -> Parity | None:
    """Which layer counts n carry real zeros converging to a real equimodular point.

    Returns None when an amplitude vanishes or the eigenvalues are neither equal nor opposite.
    """
    scale = max(abs(mu1), abs(mu2), 1e-300)
    if abs(amp1) <= tol or abs(amp2) <= tol:
        return None
    same = abs(mu1 - mu2) <= tol * scale
    opposite = abs(mu1 + mu2) <= tol * scale
    positive = amp1 * amp2 > 0
    if opposite and not same:
        return Parity.ODD_N if positive else Parity.EVEN_N
    if same:
        return Parity.NON_REAL if positive else Parity.ALL_N
    return None


def _amplitude(k: int, key: SectorKey, q: complex) -> complex:
    return complex(key_amplitude(k, key)(q))


def _refine_moduli(
    sample: SpectrumSample, keys: tuple[SectorKey, ...], builder: BlockBuilder, config: RunConfig
) -> dict[SectorKey, float] | None:
    """Top moduli of the given sectors recomputed with mpmath at raised precision."""
    out: dict[SectorKey, float] = {}
    blocks = {(b.l, b.lam.label()): b for b in builder.complete_sectors(sample.k)}
    for key in keys:
        if key not in blocks:
            out[key] = abs(sample.sectors[key].mu1)
            continue
        block = blocks[key]
        if block.dimension > MP_EIG_MAX_DIM:
            return None
        dense = evaluate(block, sample.q, ScalarKind.COMPLEX, normalised=True, dense=True, config=config)
        with mp.workdps(MP_EIG_DPS):
            values, _ = mp.eig(mp.matrix(dense.matrix.tolist()))
            out[key] = float(max(abs(v) for v in values))
    return out


def classify_point(
    k: int,
    q: complex,
    sample: SpectrumSample | None = None,
    builder: BlockBuilder | None = None,
    config: RunConfig | None = None,
) -> LimitingFeature | None:
    """Isolated point, limiting-curve point, unresolved, or None for an ordinary point."""
    config = config or settings
    builder = builder or BlockBuilder(config)
    sample = sample or leading_eigs(k, q, builder=builder, config=config)
    tol = config.equimodular_tol
    ranked = sample.ranked()
    (key1, mu1), (key2, mu2) = ranked[0], ranked[1]
    if not (sample.sectors[key1].converged and sample.sectors[key2].converged):
        return LimitingFeature(FeatureKind.UNRESOLVED, complex(q), (key1, key2), detail="not converged")

    m1, m2 = abs(mu1), abs(mu2)
    gap = (m1 - m2) / max(m1, 1e-300)
    if tol < gap <= AMBIGUITY_FACTOR * tol:
        refined = _refine_moduli(sample, tuple(dict.fromkeys((key1, key2))), builder, config)
        if refined is None or key1 == key2:
            return LimitingFeature(FeatureKind.UNRESOLVED, complex(q), (key1, key2), detail=f"gap {gap:.2e}")
        r1, r2 = refined[key1], refined[key2]
        gap = abs(r1 - r2) / max(r1, r2, 1e-300)
        logger.info(f"Refined gap at q={q}: {gap:.3e}")
        if tol < gap <= AMBIGUITY_FACTOR * tol:
            return LimitingFeature(FeatureKind.UNRESOLVED, complex(q), (key1, key2), detail=f"gap {gap:.2e}")

    if gap <= tol:
        parity = None
        if complex(q).imag == 0 and mu1.imag == 0 and mu2.imag == 0:
            parity = parity_classify(
                mu1, mu2, _amplitude(k, key1, q).real, _amplitude(k, key2, q).real, tol
            )
        return LimitingFeature(FeatureKind.CURVE, complex(q), (key1, key2), parity)

    amplitude = _amplitude(k, key1, q)
    if abs(amplitude) <= tol * max(1.0, float(np.abs(q)) ** key_amplitude(k, key1).degree):
        return LimitingFeature(FeatureKind.ISOLATED, complex(q), (key1,), detail=f"amplitude {amplitude}")
    return None
