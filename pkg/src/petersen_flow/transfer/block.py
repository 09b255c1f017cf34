"""
Transfer-matrix blocks T̃ restricted to one (k, ℓ, λ) sector, with trivial-eigenvalue
deflation and sector bookkeeping.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Any

import numpy as np
import sympy as sp
from sympy.polys.matrices import DomainMatrix

from petersen_flow.algebra.operators import Atom, apply_layer, layer_atoms
from petersen_flow.algebra.states import BasisState, orbit_representatives
from petersen_flow.algebra.symmetrizer import irrep_action
from petersen_flow.combinatorics.amplitudes import (
    AmplitudePolynomial,
    YoungDiagram,
    alpha,
    sector_amplitude,
    young_dim,
    youngs,
)
from petersen_flow.combinatorics.counting import n_trivial, orbit_count
from petersen_flow.exceptions import DeflationError, GraphDomainError, PartitionStateError
from petersen_flow.polynomials import MU, QQ_Q, Q, weight_terms

logger = logging.getLogger(__name__)

CHARPOLY_MAX_DIM = 40

BlockKey = tuple[int, int, YoungDiagram]
Entry = tuple[Fraction, ...]


@dataclass(frozen=True, eq=False)
class TransferBlock:
    """One (k, ℓ, λ) block of T̃ with polynomial entries in Q.

    entries maps (row, column) to ascending coefficients; basis index r·d + j is the
    element (c·π_j)·r for orbit representative r and irrep dimension d.
    """

    k: int
    l: int
    lam: YoungDiagram
    representatives: tuple[BasisState, ...]
    irrep_dim: int
    entries: dict[tuple[int, int], Entry]
    atoms: tuple[Atom, ...] = ()
    deflated: bool = False
    removed: int = 0
    origin: tuple[int, ...] = field(default=(), repr=False)

    @property
    def key(self) -> BlockKey:
        return (self.k, self.l, self.lam)

    @property
    def dimension(self) -> int:
        return len(self.representatives) * self.irrep_dim

    @property
    def basis(self) -> list[tuple[BasisState, int]]:
        return [(r, j) for r in self.representatives for j in range(self.irrep_dim)]

    @property
    def degree(self) -> int:
        return max((len(c) - 1 for c in self.entries.values()), default=0)

    @property
    def normalisation_sign(self) -> int:
        """T̂ = (-1)^k Q^{-2k} T̃."""
        return -1 if self.k % 2 else 1

    def label(self) -> str:
        return f"k={self.k} l={self.l} lambda={self.lam}"

    @cached_property
    def coo(self) -> tuple[np.ndarray, np.ndarray, tuple[Entry, ...]]:
        keys = sorted(self.entries)
        rows = np.array([i for i, _ in keys], dtype=np.int64)
        cols = np.array([j for _, j in keys], dtype=np.int64)
        return rows, cols, tuple(self.entries[key] for key in keys)

    @cached_property
    def float_coefficients(self) -> np.ndarray:
        """Coefficients as an (nnz, degree+1) float array."""
        _, _, coeffs = self.coo
        table = np.zeros((len(coeffs), self.degree + 1), dtype=np.float64)
        for e, c in enumerate(coeffs):
            table[e, : len(c)] = [float(x) for x in c]
        return table

    def to_domain_matrix(self) -> DomainMatrix:
        """Exact T̃ over QQ[Q] as a sparse DomainMatrix."""
        ring = QQ_Q.ring
        rows: dict[int, dict[int, Any]] = {}
        for (i, j), coeffs in self.entries.items():
            element = ring.from_dict(
                {(e,): QQ_Q.domain(c.numerator, c.denominator) for e, c in enumerate(coeffs) if c}
            )
            rows.setdefault(i, {})[j] = element
        return DomainMatrix(rows, (self.dimension, self.dimension), QQ_Q)

    def charpoly(self) -> sp.Poly:
        """Characteristic polynomial of T̂ in MU with coefficients in Q(Q)."""
        d = self.dimension
        if d > CHARPOLY_MAX_DIM:
            raise ValueError(f"charpoly limited to dimension {CHARPOLY_MAX_DIM}, block has {d}")
        if d == 0:
            return sp.Poly(sp.Integer(1), MU, domain=sp.QQ.frac_field(Q))
        coeffs = self.to_domain_matrix().charpoly()
        scale = self.normalisation_sign * Q ** (-2 * self.k)
        expr = sum(
            (sp.cancel(c.as_expr() * scale**i) * MU ** (d - i) for i, c in enumerate(coeffs)),
            sp.Integer(0),
        )
        return sp.Poly(expr, MU, domain=sp.QQ.frac_field(Q))

    def c1_indices(self) -> list[int]:
        """Basis indices whose representative has point 0 as a marked singleton."""
        d = self.irrep_dim
        return [
            r * d + j
            for r, rep in enumerate(self.representatives)
            if rep.is_marked_singleton(0)
            for j in range(d)
        ]

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "l": self.l,
            "lambda": list(self.lam.parts),
            "irrep_dim": self.irrep_dim,
            "deflated": self.deflated,
            "removed": self.removed,
            "origin": list(self.origin),
            "atoms": [str(a) for a in self.atoms],
            "representatives": [r.to_json() for r in self.representatives],
            "entries": [
                [i, j, [str(c) for c in coeffs]]
                for (i, j), coeffs in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> TransferBlock:
        k = int(data["k"])
        return cls(
            k=k,
            l=int(data["l"]),
            lam=YoungDiagram(tuple(data["lambda"])),
            representatives=tuple(BasisState.from_json(r) for r in data["representatives"]),
            irrep_dim=int(data["irrep_dim"]),
            entries={
                (int(i), int(j)): tuple(Fraction(c) for c in coeffs)
                for i, j, coeffs in data["entries"]
            },
            atoms=layer_atoms(k),
            deflated=bool(data["deflated"]),
            removed=int(data["removed"]),
            origin=tuple(int(x) for x in data.get("origin", ())),
        )


def _check_sector(k: int, l: int, lam: YoungDiagram) -> None:
    if k < 1:
        raise GraphDomainError(f"strip parameter k must be >= 1, got {k}")
    if not 0 <= l <= k + 1:
        raise GraphDomainError(f"link count {l} outside 0..{k + 1}")
    if lam.ell != l:
        raise GraphDomainError(f"diagram {lam} is not a partition of {l}")


def _pack(acc: dict[int, Fraction]) -> Entry:
    top = max((e for e, c in acc.items() if c), default=-1)
    return tuple(acc.get(e, Fraction(0)) for e in range(top + 1))


def build_block(k: int, l: int, lam: YoungDiagram) -> TransferBlock:
    """λ-symmetrised, projector-filtered block of T̃ for a width-(k+1) strip."""
    _check_sector(k, l, lam)
    reps = orbit_representatives(k, l)
    index = {r: i for i, r in enumerate(reps)}
    action = irrep_action(lam)
    d = action.dim
    acc: dict[tuple[int, int], dict[int, Fraction]] = {}

    for col, rep in enumerate(reps):
        for state, weight in apply_layer(rep, k).items():
            target, tau = state.orbit_rep()
            if target not in index:
                raise PartitionStateError(f"layer image {state.dump()} left the sector")
            terms = weight_terms(weight)
            rho = action.rho(tau)
            row0 = index[target] * d
            for i in range(d):
                for j in range(d):
                    x = rho[i][j]
                    if not x:
                        continue
                    entry = acc.setdefault((row0 + i, col * d + j), {})
                    for power, c in terms.items():
                        entry[power] = entry.get(power, Fraction(0)) + c * x

    entries = {key: _pack(e) for key, e in acc.items() if any(e.values())}
    logger.debug(f"Built block k={k} l={l} lambda={lam}: dim {len(reps) * d}, {len(entries)} nnz")
    return TransferBlock(
        k=k,
        l=l,
        lam=lam,
        representatives=tuple(reps),
        irrep_dim=d,
        entries=entries,
        atoms=layer_atoms(k),
    )


def deflate_trivial(block: TransferBlock) -> TransferBlock:
    """Remove the C1 class (point 0 a marked singleton), checking it is Q^{2k}·I and decoupled."""
    if block.deflated:
        raise DeflationError(f"block {block.label()} is already deflated")
    if block.l == 0:
        return replace(block, deflated=True, removed=0)

    c1 = set(block.c1_indices())
    expected_removed = n_trivial(block.k, block.l) * block.irrep_dim
    if len(c1) != expected_removed:
        raise DeflationError(
            f"{block.label()}: C1 class has {len(c1)} elements, expected {expected_removed}"
        )

    trivial: Entry = tuple(Fraction(int(e == 2 * block.k)) for e in range(2 * block.k + 1))
    for i in c1:
        for j in c1:
            value = block.entries.get((i, j), ())
            wanted = trivial if i == j else ()
            if value != wanted:
                raise DeflationError(f"{block.label()}: C1 entry ({i}, {j}) is {value}")
    for (i, j) in block.entries:
        if i in c1 and j not in c1:
            raise DeflationError(f"{block.label()}: C2 column {j} reaches C1 row {i}")

    keep = [b for b in range(block.dimension) if b not in c1]
    renumber = {old: new for new, old in enumerate(keep)}
    d = block.irrep_dim
    reps = tuple(
        rep for r, rep in enumerate(block.representatives) if r * d not in c1
    )
    entries = {
        (renumber[i], renumber[j]): c
        for (i, j), c in block.entries.items()
        if i in renumber and j in renumber
    }
    logger.debug(f"Deflated {block.label()}: removed {len(c1)}, kept {len(keep)}")
    return replace(
        block,
        representatives=reps,
        entries=entries,
        deflated=True,
        removed=len(c1),
        origin=tuple(keep),
    )


@dataclass
class SectorInfo:
    """Dimension bookkeeping and weight of one sector."""

    l: int
    lam: YoungDiagram | None
    orbits: int
    irrep_dim: int
    dimension: int
    deflated_dimension: int
    removed: int
    alpha: AmplitudePolynomial | None
    weight: AmplitudePolynomial | None

    def to_json(self) -> dict[str, Any]:
        return {
            "l": self.l,
            "lambda": "trivial" if self.lam is None else self.lam.label(),
            "orbits": self.orbits,
            "irrep_dim": self.irrep_dim,
            "dimension": self.dimension,
            "deflated_dimension": self.deflated_dimension,
            "removed": self.removed,
            "alpha": self.alpha.to_json()["coefficients"] if self.alpha else None,
            "weight": self.weight.name if self.weight else None,
        }


def sector_table(k: int) -> list[SectorInfo]:
    """Per-(ℓ, λ) dimensions from counting alone, plus the trivial pseudo-sector."""
    table = []
    for l in range(k + 2):
        orbits = orbit_count(k, l)
        removed_per_irrep = n_trivial(k, l)
        for lam in youngs(l):
            d = young_dim(lam)
            if l <= k - 1:
                weight: AmplitudePolynomial | None = alpha(l, lam)
            elif l == k and lam.is_symmetric_row():
                weight = sector_amplitude(k, l, lam)
            else:
                weight = None
            table.append(
                SectorInfo(
                    l=l,
                    lam=lam,
                    orbits=orbits,
                    irrep_dim=d,
                    dimension=orbits * d,
                    deflated_dimension=(orbits - removed_per_irrep) * d,
                    removed=removed_per_irrep * d,
                    alpha=alpha(l, lam),
                    weight=weight,
                )
            )
    table.append(
        SectorInfo(
            l=k + 1,
            lam=None,
            orbits=0,
            irrep_dim=1,
            dimension=1,
            deflated_dimension=1,
            removed=0,
            alpha=None,
            weight=sector_amplitude(k, k + 1, None),
        )
    )
    return table


def trivial_multiplicity(k: int, l: int) -> int:
    """Ñ_{k,1}(ℓ)·ℓ!, the trivial multiplicity over all irreps of the ℓ sector."""
    return n_trivial(k, l) * factorial(l)
