"""
Elementary join/detach operators and the per-layer transfer operator on reduced states.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

from petersen_flow.algebra.states import BasisState, WeightedStateSum, canonicalize
from petersen_flow.exceptions import PartitionStateError
from petersen_flow.polynomials import Q_WEIGHT


class AtomKind(StrEnum):
    VERTICAL = "V"  # -Q·I + D_i
    HORIZONTAL = "H"  # I - Q·J_ij


@dataclass(frozen=True)
class Atom:
    """One elementary factor of the layer operator at v = -Q."""

    kind: AtomKind
    points: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}_{''.join(map(str, self.points))}"


def detach(state: BasisState, i: int) -> WeightedStateSum:
    """D_i: split point i off as an unmarked singleton.

    An unmarked singleton gives Q·state. Detaching a marked singleton disconnects its
    link, which lowers the link count, so the result is the empty sum.
    """
    b = state.block_of(i)
    block = state.blocks[b]
    if len(block) == 1:
        if state.marks[b]:
            return WeightedStateSum()
        return WeightedStateSum.single(state, Q_WEIGHT)
    blocks = [list(x) for x in state.blocks]
    marks = list(state.marks)
    blocks[b] = [p for p in block if p != i]
    blocks.append([i])
    marks.append(0)
    return WeightedStateSum.single(canonicalize(blocks, marks, reduced=False), 1)


def join(state: BasisState, i: int, j: int) -> BasisState:
    """J_ij: amalgamate the blocks of i and j.

    When both blocks are marked the smaller label survives and higher labels close up.
    """
    if i == j:
        raise PartitionStateError("join needs two distinct points")
    bi, bj = state.block_of(i), state.block_of(j)
    if bi == bj:
        return state
    mi, mj = state.marks[bi], state.marks[bj]
    merged = list(state.blocks[bi]) + list(state.blocks[bj])
    if mi and mj:
        keep, drop = min(mi, mj), max(mi, mj)
    else:
        keep, drop = mi or mj, 0
    blocks, marks = [merged], [keep]
    for b, (block, mark) in enumerate(zip(state.blocks, state.marks, strict=True)):
        if b in (bi, bj):
            continue
        blocks.append(list(block))
        marks.append(mark - 1 if drop and mark > drop else mark)
    return canonicalize(blocks, marks, reduced=False)


def joins_two_links(state: BasisState, i: int, j: int) -> bool:
    bi, bj = state.block_of(i), state.block_of(j)
    return bi != bj and bool(state.marks[bi]) and bool(state.marks[bj])


def apply_vertical(vector: WeightedStateSum, i: int) -> WeightedStateSum:
    """V_i = -Q·I + D_i."""
    out = WeightedStateSum()
    for state, weight in vector.items():
        out.add(state, -Q_WEIGHT * weight)
        for target, w in detach(state, i).items():
            out.add(target, w * weight)
    return out


def apply_horizontal(vector: WeightedStateSum, i: int, j: int) -> WeightedStateSum:
    """H_ij = I - Q·J_ij; merging two links is dropped at fixed link count."""
    out = WeightedStateSum()
    for state, weight in vector.items():
        out.add(state, weight)
        if not joins_two_links(state, i, j):
            out.add(join(state, i, j), -Q_WEIGHT * weight)
    return out


def layer_atoms(k: int) -> tuple[Atom, ...]:
    """Factor order for one layer of a width-(k+1) strip, first applied first.

    V_k..V_1, then for i = k..1 the pair V_0, H_{0i}.
    """
    atoms = [Atom(AtomKind.VERTICAL, (i,)) for i in range(k, 0, -1)]
    for i in range(k, 0, -1):
        atoms.append(Atom(AtomKind.VERTICAL, (0,)))
        atoms.append(Atom(AtomKind.HORIZONTAL, (0, i)))
    return tuple(atoms)


def apply_atom(vector: WeightedStateSum, atom: Atom) -> WeightedStateSum:
    if atom.kind is AtomKind.VERTICAL:
        return apply_vertical(vector, atom.points[0])
    return apply_horizontal(vector, *atom.points)


def apply_layer(state: BasisState, k: int) -> WeightedStateSum:
    """One layer of T̃ applied to a reduced state, followed by the projector."""
    if state.size != k + 1:
        raise PartitionStateError(f"state has {state.size} points, expected {k + 1}")
    vector = WeightedStateSum.single(state, 1)
    for atom in layer_atoms(k):
        vector = apply_atom(vector, atom)
    return vector.reduced()
