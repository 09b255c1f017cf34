"""
Evaluation of a polynomial transfer block at a point: exact rational, residue mod p or
complex float.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from typing import Any

import numpy as np
import scipy.sparse as sparse
import sympy as sp
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from petersen_flow.config.settings import RunConfig, settings
from petersen_flow.exceptions import BadPrimeError
from petersen_flow.polynomials import MU, horner
from petersen_flow.transfer.block import TransferBlock


class ScalarKind(StrEnum):
    EXACT = "exact"
    RESIDUE = "residue"
    COMPLEX = "complex"


@dataclass
class EvaluatedMatrix:
    """A block evaluated at one point."""

    kind: ScalarKind
    q: Any
    matrix: Any
    modulus: int | None = None
    normalised: bool = False

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def is_dense(self) -> bool:
        return isinstance(self.matrix, np.ndarray)


def normalisation(block: TransferBlock, q: Any) -> Any:
    """(-1)^k q^{-2k}, the factor turning T̃ into T̂."""
    return block.normalisation_sign / (q ** (2 * block.k))


def residue_values(block: TransferBlock, q: int, p: int) -> np.ndarray:
    """Entry residues of T̃(q) mod p, in the block's COO order."""
    _, _, coeffs = block.coo
    values = np.empty(len(coeffs), dtype=np.int64)
    qp = q % p
    for e, entry in enumerate(coeffs):
        acc = 0
        for c in reversed(entry):
            if c.denominator % p == 0:
                raise BadPrimeError(q, p, f"denominator {c.denominator} vanishes")
            acc = (acc * qp + c.numerator * pow(c.denominator, -1, p)) % p
        values[e] = acc
    return values


def evaluate(
    block: TransferBlock,
    q: Any,
    kind: ScalarKind = ScalarKind.EXACT,
    p: int | None = None,
    *,
    normalised: bool = False,
    dense: bool | None = None,
    config: RunConfig | None = None,
) -> EvaluatedMatrix:
    """Substitute Q = q into every entry of the block.

    Args:
        block: Polynomial block of T̃
        q: Integer or Fraction for exact/residue kinds, any complex for the complex kind
        kind: Scalar kind of the result
        p: Prime modulus for the residue kind
        normalised: Return T̂ instead of T̃
        dense: Force dense (True) or sparse (False); default dense up to the threshold

    Returns:
        EvaluatedMatrix; exact kind holds a sympy DomainMatrix over QQ
    """
    config = config or settings
    d = block.dimension
    if dense is None:
        dense = d <= config.dense_threshold
    rows, cols, coeffs = block.coo

    if kind is ScalarKind.EXACT:
        q = Fraction(q)
        factor = Fraction(normalisation(block, q)) if normalised else Fraction(1)
        sdm: dict[int, dict[int, Any]] = {}
        for i, j, entry in zip(rows.tolist(), cols.tolist(), coeffs, strict=True):
            value = horner(entry, q) * factor
            if value:
                sdm.setdefault(i, {})[j] = QQ(value.numerator, value.denominator)
        return EvaluatedMatrix(kind, q, DomainMatrix(sdm, (d, d), QQ), None, normalised)

    if kind is ScalarKind.RESIDUE:
        if p is None:
            raise ValueError("residue evaluation needs a prime")
        if normalised and q % p == 0:
            raise BadPrimeError(q, p, "normalisation needs q invertible mod p")
        values = residue_values(block, int(q), p)
        if normalised:
            factor = pow(int(q), -2 * block.k, p) * block.normalisation_sign % p
            values = values * factor % p
        matrix = sparse.csr_matrix((values, (rows, cols)), shape=(d, d), dtype=np.int64)
        if dense:
            return EvaluatedMatrix(kind, q, matrix.toarray().astype(np.float64), p, normalised)
        return EvaluatedMatrix(kind, q, matrix, p, normalised)

    z = complex(q)
    powers = z ** np.arange(block.degree + 1)
    data = block.float_coefficients @ powers if len(coeffs) else np.zeros(0, dtype=complex)
    if normalised:
        data = data * complex(normalisation(block, z))
    matrix = sparse.csr_matrix((data, (rows, cols)), shape=(d, d), dtype=np.complex128)
    return EvaluatedMatrix(kind, z, matrix.toarray() if dense else matrix, None, normalised)


def exact_trace_power(block: TransferBlock, q: Any, n: int) -> Fraction:
    """tr(T̂(q)^n) by exact rational powering; for small blocks and checks."""
    if block.dimension == 0:
        return Fraction(0)
    matrix = evaluate(block, q, ScalarKind.EXACT, normalised=True).matrix.to_dense()
    rows = (matrix**n).to_list()
    total = sum((rows[i][i] for i in range(len(rows))), QQ(0))
    return Fraction(int(total.numerator), int(total.denominator))


def charpoly_at(block: TransferBlock, q: Any) -> sp.Poly:
    """Characteristic polynomial of T̂(q) in MU over QQ, for a rational q."""
    if block.dimension == 0:
        return sp.Poly(sp.Integer(1), MU, domain=sp.QQ)
    matrix = evaluate(block, q, ScalarKind.EXACT, normalised=True).matrix
    return sp.Poly([QQ.to_sympy(c) for c in matrix.charpoly()], MU, domain=sp.QQ)
