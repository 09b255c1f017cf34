"""
Action of S_l on the right ideal c·Q[S_l] of a Young symmetrizer.

Group-algebra elements are dicts {permutation: coefficient}; permutations are tuples
acting on 0..l-1 and compose as (a∘b)(i) = a(b(i)).
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from functools import cache, cached_property

from sympy import QQ
from sympy.combinatorics import Permutation
from sympy.polys.matrices import DomainMatrix

from petersen_flow.algebra.states import Perm
from petersen_flow.combinatorics.amplitudes import YoungDiagram, young_dim

logger = logging.getLogger(__name__)

GroupElement = dict[Perm, int]


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(a[x] for x in b)


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def sign(a: Perm) -> int:
    return int(Permutation(list(a)).signature()) if a else 1


def row_reading_tableau(lam: YoungDiagram) -> list[list[int]]:
    """Fill rows left to right with 0..l-1."""
    rows, start = [], 0
    for length in lam.parts:
        rows.append(list(range(start, start + length)))
        start += length
    return rows


def _stabiliser(groups: list[list[int]], l: int) -> list[Perm]:
    """Permutations preserving each set in groups setwise."""
    perms = []
    for images in itertools.product(*(itertools.permutations(g) for g in groups)):
        p = list(range(l))
        for g, img in zip(groups, images, strict=True):
            for src, dst in zip(g, img, strict=True):
                p[src] = dst
        perms.append(tuple(p))
    return perms


def young_symmetrizer(lam: YoungDiagram) -> GroupElement:
    """c = b_t·a_t for the row-reading tableau t of λ."""
    l = lam.ell
    rows = row_reading_tableau(lam)
    columns = [[row[j] for row in rows if j < len(row)] for j in range(lam.parts[0] if l else 0)]
    c: GroupElement = {}
    for q in _stabiliser(columns, l):
        sq = sign(q)
        for p in _stabiliser(rows, l):
            g = compose(q, p)
            c[g] = c.get(g, 0) + sq
    return {g: v for g, v in c.items() if v}


class IrrepAction:
    """Right action of S_l on the basis {c·π_j} of c·Q[S_l].

    rho(τ) is the matrix with c·π_j·τ = Σ_i rho(τ)[i][j] c·π_i.
    """

    def __init__(self, lam: YoungDiagram):
        self.lam = lam
        self.l = lam.ell
        self.dim = young_dim(lam)
        self.c = young_symmetrizer(lam)
        self.basis_perms, self.pivots = self._choose_basis()

    def _right_multiple(self, h: Perm) -> dict[Perm, Fraction]:
        # (c·h)(P) = c(P∘h^{-1})
        return {compose(g, h): Fraction(v) for g, v in self.c.items()}

    def _choose_basis(self) -> tuple[list[Perm], list[Perm]]:
        """Greedy independent set among c·π in lexicographic order of π."""
        echelon: list[tuple[Perm, dict[Perm, Fraction]]] = []
        chosen: list[Perm] = []
        for pi in itertools.permutations(range(self.l)):
            vector = self._right_multiple(pi)
            for pivot, row in echelon:
                factor = vector.get(pivot, Fraction(0))
                if factor:
                    scale = factor / row[pivot]
                    for key, value in row.items():
                        updated = vector.get(key, Fraction(0)) - scale * value
                        if updated:
                            vector[key] = updated
                        else:
                            vector.pop(key, None)
            if vector:
                echelon.append((min(vector), vector))
                chosen.append(pi)
                if len(chosen) == self.dim:
                    break
        logger.debug(f"Irrep {self.lam}: basis perms {chosen}")
        return chosen, [pivot for pivot, _ in echelon]

    @cached_property
    def _pivot_inverse(self) -> DomainMatrix:
        rows = [
            [QQ(self.c.get(compose(pa, inverse(pb)), 0)) for pb in self.basis_perms]
            for pa in self.pivots
        ]
        return DomainMatrix(rows, (self.dim, self.dim), QQ).inv()

    def rho(self, tau: Perm) -> tuple[tuple[Fraction, ...], ...]:
        return _rho_cached(self, tau)

    def rho_column(self, tau: Perm, j: int) -> list[Fraction]:
        h = inverse(compose(self.basis_perms[j], tau))
        y = DomainMatrix(
            [[QQ(self.c.get(compose(pa, h), 0))] for pa in self.pivots], (self.dim, 1), QQ
        )
        column = (self._pivot_inverse * y).to_list()
        return [Fraction(int(v[0].numerator), int(v[0].denominator)) for v in column]

    def character(self, tau: Perm) -> Fraction:
        return sum((self.rho(tau)[i][i] for i in range(self.dim)), Fraction(0))

    def __hash__(self) -> int:
        return hash(self.lam)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IrrepAction) and other.lam == self.lam


@cache
def _rho_cached(action: IrrepAction, tau: Perm) -> tuple[tuple[Fraction, ...], ...]:
    columns = [action.rho_column(tau, j) for j in range(action.dim)]
    return tuple(tuple(columns[j][i] for j in range(action.dim)) for i in range(action.dim))


@cache
def irrep_action(lam: YoungDiagram) -> IrrepAction:
    return IrrepAction(lam)
