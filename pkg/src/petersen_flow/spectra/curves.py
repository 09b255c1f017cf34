"""
Direct search for limiting curves: grid sampling, edge bisection and polyline chaining.
"""

from __future__ import annotations

import csv
import logging
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
import networkx as nx
import numpy as np

from petersen_flow.config.settings import RunConfig, settings
from petersen_flow.exceptions import GraphDomainError, NoSignChangeError
from petersen_flow.spectra.eigen import (
    EigenId,
    SectorKey,
    SpectrumSample,
    format_key,
    leading_eigs,
    leading_eigs_block,
    sector_key,
)
from petersen_flow.spectra.qc import bisect
from petersen_flow.transfer.builder import BlockBuilder

logger = logging.getLogger(__name__)

Window = tuple[float, float, float, float]  # re_min, re_max, im_min, im_max
Cell = tuple[int, int]

EDGE_WIDTH = 1e-10
CONTINUATION_STEPS = 4
BRANCH_MERGE = 0.05


@dataclass
class Crossing:
    """A point on a grid edge where the two leading eigenvalues are equimodular."""

    q: complex
    pair: tuple[SectorKey, SectorKey]
    cells: tuple[Cell, ...]


@dataclass
class CurveSegment:
    """One chained polyline of crossings sharing a sector pair."""

    segment_id: int
    pair: tuple[SectorKey, SectorKey]
    points: list[complex]

    @property
    def pair_label(self) -> str:
        return " | ".join(format_key(k) for k in self.pair)


@dataclass
class CurveResult:
    """Limiting-curve polylines found inside one window."""

    k: int
    window: Window
    resolution: int
    segments: list[CurveSegment] = field(default_factory=list)
    crossings: list[Crossing] = field(default_factory=list)
    unresolved: list[tuple[complex, complex]] = field(default_factory=list)

    def real_crossings(self, tol: float = 1e-12) -> list[float]:
        """Real parts of crossings found on the real axis."""
        return sorted(c.q.real for c in self.crossings if abs(c.q.imag) <= tol)

    def branch_angles(self, min_radius: float, merge: float = BRANCH_MERGE) -> list[float]:
        """Asymptotic arg Q of the outward branches, sorted in (-π, π].

        Every run of polyline vertices with |q| >= min_radius is fitted by a straight
        ray; runs whose angles differ by less than merge are one branch.
        """
        angles = sorted(
            _ray_angle(run)
            for segment in self.segments
            for run in _outer_runs(segment.points, min_radius)
        )
        clusters: list[list[float]] = []
        for angle in angles:
            if clusters and angle - clusters[-1][-1] < merge:
                clusters[-1].append(angle)
            else:
                clusters.append([angle])
        if len(clusters) > 1 and clusters[0][0] + 2 * np.pi - clusters[-1][-1] < merge:
            clusters[0] = [a - 2 * np.pi for a in clusters.pop()] + clusters[0]
        return sorted(float(np.angle(np.exp(1j * np.mean(c)))) for c in clusters)


def expected_branch_angles(k: int) -> list[float]:
    """(m - 1/2)π/k for m = 1..2k, folded into (-π, π]."""
    return sorted(float(np.angle(np.exp(1j * (m - 0.5) * np.pi / k))) for m in range(1, 2 * k + 1))


def _outer_runs(points: Sequence[complex], min_radius: float) -> list[list[complex]]:
    runs: list[list[complex]] = []
    current: list[complex] = []
    for q in points:
        if abs(q) >= min_radius:
            current.append(q)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


def _ray_angle(points: Sequence[complex]) -> float:
    """Direction of the least-squares line through points, pointing away from the origin."""
    z = np.asarray(points, dtype=complex)
    if len(z) == 1:
        return float(np.angle(z[0]))
    xy = np.column_stack([z.real, z.imag])
    _, _, vt = np.linalg.svd(xy - xy.mean(axis=0), full_matrices=False)
    direction = complex(vt[0, 0], vt[0, 1])
    if (direction.conjugate() * z.mean()).real < 0:
        direction = -direction
    return float(np.angle(direction))


def _axis(lo: float, hi: float, resolution: int) -> np.ndarray:
    points = np.linspace(lo, hi, resolution)
    if lo < 0 < hi:
        points = np.union1d(points, [0.0])
    return points


class CurveTracer:
    """Samples the top two eigenvalues on a grid and refines each exchange of dominance."""

    def __init__(self, config: RunConfig | None = None, builder: BlockBuilder | None = None):
        self.config = config or settings
        self.builder = builder or BlockBuilder(self.config)

    def _sample(self, k: int, q: complex) -> SpectrumSample:
        return leading_eigs(k, q, self.builder.complete_sectors(k), config=self.config)

    def _pair(self, k: int, key: SectorKey, q: complex) -> tuple[complex, complex]:
        """Top two eigenvalues of one sector."""
        block = next(b for b in self.builder.complete_sectors(k) if sector_key(b) == key)
        spectrum = leading_eigs_block(block, q, self.config)
        if spectrum.mu2 is None:
            raise GraphDomainError(f"sector {format_key(key)} has a single eigenvalue")
        return spectrum.mu1, spectrum.mu2

    def _refine(
        self, k: int, a: complex, b: complex, key_a: SectorKey, key_b: SectorKey
    ) -> complex | None:
        def gap(t: float) -> float:
            s = self._sample(k, a + t * (b - a))
            return s.modulus(key_a) - s.modulus(key_b)

        try:
            t = bisect(gap, 0.0, 1.0, EDGE_WIDTH)
        except NoSignChangeError:
            return None
        q = a + t * (b - a)
        top = self._sample(k, q).dominant().key
        return q if top in (key_a, key_b) else None

    def _refine_swap(self, k: int, key: SectorKey, a: complex, b: complex) -> complex | None:
        """Point on a→b where the top two eigenvalues of one sector trade moduli.

        The pair is followed by continuation, so the moduli of the two tracked
        eigenvalues change order exactly once at a crossing.
        """

        def point(t: float) -> complex:
            return a + t * (b - a)

        prev_t, prev = 0.0, self._pair(k, key, a)
        for t in np.linspace(0.0, 1.0, CONTINUATION_STEPS + 1)[1:]:
            current = _follow(prev, self._pair(k, key, point(float(t))))
            if abs(current[0]) < abs(current[1]):
                lo, hi = prev_t, float(t)
                break
            prev_t, prev = float(t), current
        else:
            return None
        while hi - lo > EDGE_WIDTH:
            mid = 0.5 * (lo + hi)
            current = _follow(prev, self._pair(k, key, point(mid)))
            if abs(current[0]) >= abs(current[1]):
                lo, prev = mid, current
            else:
                hi = mid
        q = point(0.5 * (lo + hi))
        return q if self._sample(k, q).dominant().key == key else None

    def trace(self, k: int, window: Window, resolution: int = 41) -> CurveResult:
        """Polylines where the top two eigenvalues over all sectors are equimodular."""
        re_min, re_max, im_min, im_max = window
        xs = _axis(re_min, re_max, resolution)
        ys = _axis(im_min, im_max, resolution)
        tops: dict[Cell, tuple[EigenId, ...]] = {}
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                q = complex(x, y)
                if q != 0:
                    tops[(i, j)] = self._sample(k, q).top_two()

        result = CurveResult(k, window, resolution)
        edges = []
        for (i, j), top in tops.items():
            for di, dj in ((1, 0), (0, 1)):
                other = (i + di, j + dj)
                if other in tops and (tops[other] != top or _same_sector(top)):
                    edges.append(((i, j), other))
        for (i, j), (i2, j2) in edges:
            a, b = complex(xs[i], ys[j]), complex(xs[i2], ys[j2])
            top_a, top_b = tops[(i, j)], tops[(i2, j2)]
            key_a, key_b = top_a[0][0], top_b[0][0]
            if key_a != key_b:
                q = self._refine(k, a, b, key_a, key_b)
            elif _same_sector(top_a) and top_a == top_b:
                q = self._refine_swap(k, key_a, a, b)
                if q is None:
                    continue
            else:
                # the runner-up changed under an unchanged leader
                continue
            if q is None:
                result.unresolved.append((a, b))
                continue
            cells = ((i, j - 1), (i, j)) if i2 == i + 1 else ((i - 1, j), (i, j))
            pair = (key_a, key_b) if key_a <= key_b else (key_b, key_a)
            result.crossings.append(Crossing(q, pair, cells))
        result.segments = chain(result.crossings)
        if result.unresolved:
            logger.warning(f"k={k}: {len(result.unresolved)} grid edges left unresolved")
        logger.info(f"k={k}: {len(result.crossings)} crossings in {len(result.segments)} segments")
        return result


def _same_sector(top: tuple[EigenId, ...]) -> bool:
    return len(top) == 2 and top[0][0] == top[1][0]


def _follow(prev: tuple[complex, complex], pair: tuple[complex, complex]) -> tuple[complex, complex]:
    """Order pair so that each entry continues the matching entry of prev."""
    u, v = pair
    if abs(u - prev[0]) + abs(v - prev[1]) <= abs(u - prev[1]) + abs(v - prev[0]):
        return u, v
    return v, u


def chain(crossings: Sequence[Crossing]) -> list[CurveSegment]:
    """Join crossings that share a grid cell and a sector pair into polylines."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(crossings)))
    by_cell: dict[tuple[Cell, tuple[SectorKey, SectorKey]], list[int]] = defaultdict(list)
    for index, crossing in enumerate(crossings):
        for cell in crossing.cells:
            by_cell[(cell, crossing.pair)].append(index)
    for members in by_cell.values():
        for a, b in zip(members, members[1:], strict=False):
            graph.add_edge(a, b)

    segments = []
    components = sorted(nx.connected_components(graph), key=min)
    for segment_id, component in enumerate(components):
        sub = graph.subgraph(component)
        ends = [node for node in sub if sub.degree(node) <= 1]
        start = min(ends) if ends else min(component)
        order = list(nx.dfs_preorder_nodes(sub, start))
        pair = crossings[start].pair
        segments.append(CurveSegment(segment_id, pair, [crossings[i].q for i in order]))
    return segments


def trace_curve(
    k: int,
    window: Window,
    resolution: int = 41,
    config: RunConfig | None = None,
    builder: BlockBuilder | None = None,
) -> CurveResult:
    return CurveTracer(config, builder).trace(k, window, resolution)


def write_csv(result: CurveResult, path: Path) -> None:
    """Rows (re, im, segment_id, sector_pair), one per polyline vertex."""
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["re", "im", "segment_id", "sector_pair"])
        for segment in result.segments:
            for q in segment.points:
                writer.writerow([repr(q.real), repr(q.imag), segment.segment_id, segment.pair_label])


def plot_svg(
    result: CurveResult,
    path: Path,
    zeros: Sequence[complex] = (),
    inverse: bool = False,
) -> None:
    """Render the polylines, with optional zeros overlaid, in the Q or 1/Q plane."""
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    def view(points: Sequence[complex]) -> np.ndarray:
        values = np.asarray(points, dtype=complex)
        return 1.0 / values if inverse else values

    fig, ax = plt.subplots(figsize=(6, 6))
    for segment in result.segments:
        pts = view(segment.points)
        ax.plot(pts.real, pts.imag, "-", lw=1.2, label=segment.pair_label)
    if len(zeros):
        pts = view([z for z in zeros if z != 0])
        ax.plot(pts.real, pts.imag, "o", ms=2.5, color="black")
    ax.axhline(0.0, color="grey", lw=0.5)
    ax.set_xlabel("Re(1/Q)" if inverse else "Re(Q)")
    ax.set_ylabel("Im(1/Q)" if inverse else "Im(Q)")
    ax.set_title(f"Limiting curves, k = {result.k}")
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)
