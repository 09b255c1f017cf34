"""
Exact trace polynomials tr(T̂^n) per block: plan, modular sweep, CRT, interpolation.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np
from sympy import prevprime

from petersen_flow.config.settings import RunConfig, settings
from petersen_flow.exceptions import BadPrimeError
from petersen_flow.polynomials import TraceKey, TracePolynomial
from petersen_flow.traces.interpolation import interpolate
from petersen_flow.traces.modular import crt_reconstruct, scaled_trace_mod
from petersen_flow.transfer.block import TransferBlock
from petersen_flow.transfer.cache import TraceCache

logger = logging.getLogger(__name__)

BOUND_MARGIN_BITS = 4


def degree_bound(k: int, l: int, n: int) -> int:
    """Degree bound n·(k + min(1 - ℓ, 0)) for tr(T̂^n) of an ℓ-link block."""
    return n * (k + min(1 - l, 0))


def magnitude_bits(block: TransferBlock, n: int, q: int) -> int:
    """Bits bounding |ℓ!·tr(T̃(q)^n)| via dim·‖T̃(q)‖_∞^n."""
    d = block.dimension
    if d == 0:
        return 1
    rows, _, _ = block.coo
    powers = float(abs(q)) ** np.arange(block.degree + 1)
    row_sums = np.bincount(rows, weights=np.abs(block.float_coefficients) @ powers, minlength=d)
    norm = max(float(row_sums.max()), 1.0)
    bits = math.log2(factorial(block.l)) + math.log2(d) + n * math.log2(norm)
    return math.ceil(bits) + BOUND_MARGIN_BITS


@dataclass
class EvaluationPlan:
    """Points, primes and per-point scaling for one (block, n) reconstruction.

    value(q) = integer(q) / scaling[q], where integer(q) = ℓ!·tr(T̃(q)^n).
    """

    points: tuple[int, ...]
    primes: tuple[int, ...]
    scaling: dict[int, int] = field(default_factory=dict)
    degree: int = 0
    bits: int = 0

    @property
    def surplus_points(self) -> tuple[int, ...]:
        return self.points[self.degree + 1 :]


def _prime_stream(primes: tuple[int, ...], max_prime: int) -> Iterator[int]:
    """Planned primes first, then further primes below them."""
    yield from primes
    candidate = min(primes) if primes else max_prime + 1
    while candidate > 3:
        candidate = prevprime(candidate)
        if candidate not in primes:
            yield candidate


def _point_value(
    block: TransferBlock, n: int, q: int, primes: tuple[int, ...], max_prime: int, bits: int
) -> tuple[int, int]:
    """Reconstruct ℓ!·tr(T̃(q)^n) from residues; primes that reject this q are replaced."""
    residues: dict[int, int] = {}
    collected = 0.0
    surplus = None
    for p in _prime_stream(primes, max_prime):
        try:
            residues[p] = scaled_trace_mod(block, n, q, p)
        except BadPrimeError as exc:
            logger.warning(f"Skipping prime: {exc}")
            continue
        if collected >= bits + 1:
            surplus = p
            break
        collected += math.log2(p)
    return q, crt_reconstruct(residues, surplus=surplus)


class TraceEngine:
    """Computes and caches trace polynomials."""

    def __init__(self, config: RunConfig | None = None, use_disk_cache: bool = True):
        self.config = config or settings
        self.cache = TraceCache(self.config) if use_disk_cache else None

    def plan(self, block: TransferBlock, n: int) -> EvaluationPlan:
        d = degree_bound(block.k, block.l, n)
        if self.config.points:
            points = tuple(q for q in self.config.points if q != 0)
        else:
            points = tuple(range(1, d + 3))
        if len(points) < d + 2:
            raise ValueError(f"{len(points)} evaluation points given, need {d + 2}")
        bits = max(magnitude_bits(block, n, q) for q in points)
        if self.config.primes:
            primes = tuple(self.config.primes)
        else:
            chosen: list[int] = []
            total = 0.0
            candidate = self.config.max_prime + 1
            while total < bits + 1:
                candidate = prevprime(candidate)
                chosen.append(candidate)
                total += math.log2(candidate)
            # surplus checksum prime
            chosen.append(prevprime(candidate))
            primes = tuple(chosen)
        sign = -1 if (block.k * n) % 2 else 1
        scaling = {q: sign * factorial(block.l) * q ** (2 * block.k * n) for q in points}
        return EvaluationPlan(points=points, primes=primes, scaling=scaling, degree=d, bits=bits)

    def key(self, block: TransferBlock, n: int) -> TraceKey:
        return (block.k, block.l, block.lam.parts, n)

    def trace_polynomial(self, block: TransferBlock, n: int) -> TracePolynomial:
        """tr(T̂^n) of the block as an exact polynomial in Q."""
        key = self.key(block, n)
        if block.dimension == 0:
            return TracePolynomial(key=key, coefficients=(Fraction(0),))
        if self.cache:
            cached = self.cache.load(key, block.deflated)
            if cached is not None:
                return cached

        plan = self.plan(block, n)
        jobs = self.config.jobs
        args = [(block, n, q, plan.primes, self.config.max_prime, plan.bits) for q in plan.points]
        if jobs > 1 and len(args) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = dict(pool.map(_point_value, *zip(*args, strict=True)))
        else:
            results = dict(_point_value(*a) for a in args)

        values = {q: Fraction(results[q], plan.scaling[q]) for q in plan.points}
        trace = interpolate(values, plan.degree, key)
        logger.info(
            f"Trace {block.label()} n={n}: degree {trace.degree} from {len(plan.points)} points, "
            f"{len(plan.primes)} primes"
        )
        if self.cache:
            self.cache.store(trace, block.deflated)
        return trace
