"""
Q_c(k), the largest real accumulation point of flow zeros, and its large-k extrapolation.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass

import numpy as np

from petersen_flow.config.settings import RunConfig, settings
from petersen_flow.exceptions import NoSignChangeError, UnderdeterminedFitError
from petersen_flow.spectra.eigen import SectorKey, SpectrumSample, format_key, leading_eigs
from petersen_flow.transfer.block import TransferBlock
from petersen_flow.transfer.builder import BlockBuilder

logger = logging.getLogger(__name__)

REFERENCE_QC: dict[int, float] = {
    1: 3.0,
    2: 3.6180339887,
    3: 3.7818423129,
    4: 4.5697435537,
    5: 4.9029018077,
    6: 5.1079785012,
    7: 5.2352605291,
    8: 5.3246966903,
    9: 5.3886186958,
    10: 5.4364766073,
    11: 5.4729804532,
}

SCAN_START = 2.0
SCAN_STOP = 8.0
SCAN_STEP = 0.02
BISECTION_WIDTH = 1e-10


@dataclass
class QcResult:
    """Location of Q_c(k) and the two sectors exchanging dominance there."""

    k: int
    qc: float
    below: SectorKey
    above: SectorKey
    bracket: tuple[float, float]
    mu_below: complex = 0j
    mu_above: complex = 0j

    def describe(self) -> str:
        return (
            f"Q_c({self.k}) = {self.qc:.10f}: {format_key(self.below)} -> {format_key(self.above)}"
        )


def bisect(f: Callable[[float], float], lo: float, hi: float, width: float = BISECTION_WIDTH) -> float:
    """Midpoint of a bracket of width <= width around a sign change of f."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise NoSignChangeError(f"no sign change on [{lo}, {hi}]: {flo:.3e}, {fhi:.3e}")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class QcFinder:
    """Scans the real axis for the last change of dominant sector and bisects it."""

    def __init__(self, config: RunConfig | None = None, builder: BlockBuilder | None = None):
        self.config = config or settings
        self.builder = builder or BlockBuilder(self.config)

    def _blocks(self, k: int) -> list[TransferBlock]:
        return self.builder.complete_sectors(k)

    def sample(self, k: int, q: float) -> SpectrumSample:
        return leading_eigs(k, q, self._blocks(k), config=self.config)

    def find_qc(self, k: int, bracket: tuple[float, float] | None = None) -> QcResult:
        """Bisection on |μ_a(q)| - |μ_b(q)| between the sectors dominant at either end."""
        if bracket is None:
            bracket = self.scan(k)
        lo, hi = bracket
        below = self.sample(k, lo).dominant().key
        above = self.sample(k, hi).dominant().key
        if below == above:
            raise NoSignChangeError(f"sector {format_key(below)} dominates on the whole bracket {bracket}")

        def gap(q: float) -> float:
            s = self.sample(k, q)
            return s.modulus(below) - s.modulus(above)

        qc = bisect(gap, lo, hi)
        final = self.sample(k, qc)
        logger.info(f"Q_c({k}) = {qc:.10f} between {format_key(below)} and {format_key(above)}")
        return QcResult(
            k, qc, below, above, bracket, final.sectors[below].mu1, final.sectors[above].mu1
        )

    def scan(self, k: int, start: float = SCAN_START, stop: float = SCAN_STOP, step: float = SCAN_STEP) -> tuple[float, float]:
        """Bracket around the largest q where the dominant sector changes."""
        grid = np.arange(start, stop + step / 2, step)
        previous = None
        found: tuple[float, float] | None = None
        for q in grid:
            key = self.sample(k, float(q)).dominant().key
            if previous is not None and key != previous[1]:
                found = (previous[0], float(q))
            previous = (float(q), key)
        if found is None:
            raise NoSignChangeError(f"dominant sector is constant on [{start}, {stop}] for k={k}")
        return found


def find_qc(
    k: int,
    bracket: tuple[float, float] | None = None,
    config: RunConfig | None = None,
    builder: BlockBuilder | None = None,
) -> QcResult:
    return QcFinder(config, builder).find_qc(k, bracket)


@dataclass
class FitReport:
    """Quadratic fits of Q_c in 1/k over even and odd k."""

    even: tuple[float, ...]
    odd: tuple[float, ...]
    limit_even: float
    limit_odd: float

    @property
    def spread(self) -> float:
        return abs(self.limit_even - self.limit_odd)

    @property
    def limit(self) -> float:
        return 0.5 * (self.limit_even + self.limit_odd)


def _fit(points: Mapping[int, float], degree: int, label: str) -> np.ndarray:
    if len(points) < degree + 1:
        raise UnderdeterminedFitError(f"{label} fit needs {degree + 1} points, got {len(points)}")
    ks = np.array(sorted(points), dtype=float)
    values = np.array([points[int(k)] for k in ks])
    return np.polyfit(1.0 / ks, values, degree)


def extrapolate_qc(
    table: Mapping[int, float] | None = None, k_min: int = 4, degree: int = 2
) -> FitReport:
    """Least-squares polynomial in 1/k, separately on even and odd k >= k_min."""
    table = REFERENCE_QC if table is None else table
    kept = {k: v for k, v in table.items() if k >= k_min}
    even = _fit({k: v for k, v in kept.items() if k % 2 == 0}, degree, "even")
    odd = _fit({k: v for k, v in kept.items() if k % 2 == 1}, degree, "odd")
    report = FitReport(tuple(even.tolist()), tuple(odd.tolist()), float(even[-1]), float(odd[-1]))
    logger.info(f"Q_c extrapolation: even {report.limit_even:.4f}, odd {report.limit_odd:.4f}")
    return report
