"""
Modular traces of block powers, prime selection and Chinese remainder reconstruction.
"""

import logging
from collections.abc import Mapping
from math import factorial

import numpy as np
import scipy.sparse as sparse
from sympy import prevprime
from sympy.ntheory.modular import crt

from petersen_flow.exceptions import BadPrimeError, CRTConsistencyError
from petersen_flow.transfer.block import TransferBlock
from petersen_flow.transfer.evaluation import EvaluatedMatrix, ScalarKind, evaluate

logger = logging.getLogger(__name__)

FLOAT_EXACT_LIMIT = 2**53
SPARSE_CHUNK = 256


def prime_sequence(count: int, max_prime: int = 65521, exclude: tuple[int, ...] = ()) -> list[int]:
    """The first `count` primes <= max_prime in descending order, skipping `exclude`."""
    primes: list[int] = []
    candidate = max_prime + 1
    while len(primes) < count:
        candidate = prevprime(candidate)
        if candidate not in exclude:
            primes.append(candidate)
    return primes


def _dense_power_trace(matrix: np.ndarray, n: int, p: int) -> int:
    """tr(M^n) mod p with float64 BLAS products; exact while dim·p² < 2^53."""
    result = np.eye(matrix.shape[0], dtype=np.float64)
    base = matrix.copy()
    while n:
        if n & 1:
            result = np.fmod(result @ base, p)
        n >>= 1
        if n:
            base = np.fmod(base @ base, p)
    return int(np.trace(result).item()) % p


def _sparse_power_trace(matrix: sparse.csr_matrix, n: int, p: int) -> int:
    """tr(M^n) mod p by pushing identity columns through n sparse products."""
    d = matrix.shape[0]
    total = 0
    for start in range(0, d, SPARSE_CHUNK):
        stop = min(start + SPARSE_CHUNK, d)
        block = np.zeros((d, stop - start), dtype=np.int64)
        block[np.arange(start, stop), np.arange(stop - start)] = 1
        for _ in range(n):
            block = (matrix @ block) % p
        total += int(block[np.arange(start, stop), np.arange(stop - start)].sum())
    return total % p


def power_trace_mod(evaluated: EvaluatedMatrix, n: int) -> int:
    """Residue of tr(M^n) for a residue-kind evaluated matrix."""
    if evaluated.kind is not ScalarKind.RESIDUE or evaluated.modulus is None:
        raise ValueError("power_trace_mod needs a residue-kind matrix")
    p = evaluated.modulus
    d = evaluated.dimension
    if d == 0:
        return 0
    if evaluated.is_dense and d * p * p < FLOAT_EXACT_LIMIT:
        return _dense_power_trace(evaluated.matrix, n, p)
    matrix = evaluated.matrix
    if evaluated.is_dense:
        matrix = sparse.csr_matrix(matrix.astype(np.int64))
    return _sparse_power_trace(matrix, n, p)


def trace_mod(block: TransferBlock, n: int, q: int, p: int, dense: bool | None = None) -> int:
    """tr(T̂(q)^n) mod p."""
    if q % p == 0:
        raise BadPrimeError(q, p, "normalisation needs q invertible mod p")
    evaluated = evaluate(block, q, ScalarKind.RESIDUE, p, normalised=True, dense=dense)
    return power_trace_mod(evaluated, n)


def scaled_trace_mod(block: TransferBlock, n: int, q: int, p: int, dense: bool | None = None) -> int:
    """ℓ!·tr(T̃(q)^n) mod p; this quantity is an integer at integer q."""
    evaluated = evaluate(block, q, ScalarKind.RESIDUE, p, dense=dense)
    return power_trace_mod(evaluated, n) * factorial(block.l) % p


def crt_reconstruct(residues: Mapping[int, int], surplus: int | None = None) -> int:
    """Symmetric-range integer from residues, verified against one surplus prime.

    Args:
        residues: {prime: residue}
        surplus: Prime held back as a checksum; defaults to the smallest prime given

    Returns:
        The unique integer in (-M/2, M/2] over the non-surplus primes
    """
    if len(residues) < 2:
        raise CRTConsistencyError("at least one reconstruction prime and one surplus are required")
    surplus = min(residues) if surplus is None else surplus
    primes = [p for p in residues if p != surplus]
    value, _ = crt(primes, [residues[p] for p in primes], symmetric=True)
    value = int(value)
    if value % surplus != residues[surplus] % surplus:
        raise CRTConsistencyError(
            f"surplus prime {surplus} disagrees: {value % surplus} != {residues[surplus] % surplus}"
        )
    return value
