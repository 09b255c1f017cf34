"""
Reduced basis states: set partitions of the top-row points with marked, distinguishable
blocks, and weighted sums of them.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from sympy.utilities.iterables import multiset_partitions

from petersen_flow.exceptions import PartitionStateError

Perm = tuple[int, ...]


@dataclass(frozen=True)
class BasisState:
    """Set partition of points 0..size-1; marks[b] is the label of block b (0 = unmarked).

    Blocks are kept sorted by least element. Two states are equal iff their canonical
    encodings are equal.
    """

    size: int
    blocks: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.blocks) != len(self.marks):
            raise PartitionStateError("one mark entry per block is required")
        seen = sorted(p for block in self.blocks for p in block)
        if seen != list(range(self.size)):
            raise PartitionStateError(f"blocks {self.blocks} do not partition 0..{self.size - 1}")
        if any(not block for block in self.blocks):
            raise PartitionStateError("empty block")
        labels = sorted(m for m in self.marks if m)
        if labels != list(range(1, len(labels) + 1)):
            raise PartitionStateError(f"mark labels {self.marks} are not 1..l used once each")
        firsts = [block[0] for block in self.blocks]
        if firsts != sorted(firsts) or any(list(b) != sorted(b) for b in self.blocks):
            raise PartitionStateError("blocks are not in canonical order")

    @property
    def ell(self) -> int:
        """Number of marked blocks (links)."""
        return sum(1 for m in self.marks if m)

    @cached_property
    def encoding(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Restricted-growth string and mark vector."""
        rgs = [0] * self.size
        for b, block in enumerate(self.blocks):
            for p in block:
                rgs[p] = b
        return tuple(rgs), self.marks

    def __lt__(self, other: BasisState) -> bool:
        return self.encoding < other.encoding

    def block_of(self, point: int) -> int:
        if not 0 <= point < self.size:
            raise PartitionStateError(f"point {point} outside 0..{self.size - 1}")
        return self.encoding[0][point]

    def has_unmarked_singleton(self) -> bool:
        return any(len(b) == 1 and not m for b, m in zip(self.blocks, self.marks, strict=True))

    @property
    def is_reduced(self) -> bool:
        return not self.has_unmarked_singleton()

    def is_marked_singleton(self, point: int) -> bool:
        b = self.block_of(point)
        return len(self.blocks[b]) == 1 and self.marks[b] != 0

    def relabel(self, perm: Perm) -> BasisState:
        """Apply a permutation of mark labels; label m becomes perm[m-1]+1."""
        marks = tuple(perm[m - 1] + 1 if m else 0 for m in self.marks)
        return BasisState(self.size, self.blocks, marks)

    def orbit_rep(self) -> tuple[BasisState, Perm]:
        """Split the state as tau·r, r carrying labels 1..l in block order."""
        tau = tuple(m - 1 for m in self.marks if m)
        counter = itertools.count(1)
        marks = tuple(next(counter) if m else 0 for m in self.marks)
        return BasisState(self.size, self.blocks, marks), tau

    def dump(self) -> str:
        blocks = " ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        marks = " ".join(f"{b}:{m}" for b, m in enumerate(self.marks) if m)
        return f"{blocks} | {marks}".rstrip(" |")

    def to_json(self) -> dict[str, Any]:
        return {"size": self.size, "blocks": [list(b) for b in self.blocks], "marks": list(self.marks)}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> BasisState:
        return canonicalize(
            [tuple(b) for b in data["blocks"]], list(data["marks"]), reduced=False
        )


def canonicalize(
    blocks: Iterable[Iterable[int]], marks: Iterable[int] | None = None, *, reduced: bool = True
) -> BasisState:
    """Build a state from blocks in any order; empty blocks are dropped.

    With reduced=True an unmarked singleton is rejected.
    """
    pairs = [
        (tuple(sorted(b)), m)
        for b, m in zip(
            [list(b) for b in blocks],
            list(marks) if marks is not None else itertools.repeat(0),
            strict=False,
        )
        if b
    ]
    pairs.sort(key=lambda pair: pair[0][0])
    size = sum(len(b) for b, _ in pairs)
    state = BasisState(size, tuple(b for b, _ in pairs), tuple(m for _, m in pairs))
    if reduced and state.has_unmarked_singleton():
        raise PartitionStateError(f"unmarked singleton in {state.dump()}")
    return state


def set_partitions(size: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    if size == 0:
        yield ()
        return
    for partition in multiset_partitions(list(range(size))):
        yield tuple(tuple(b) for b in partition)


def enumerate_basis(k: int, l: int) -> list[BasisState]:
    """All labelled reduced states over k+1 points with l links, in encoding order."""
    if not 0 <= l <= k + 1:
        raise PartitionStateError(f"link count {l} outside 0..{k + 1}")
    states = []
    for partition in set_partitions(k + 1):
        for chosen in itertools.permutations(range(len(partition)), l):
            marks = [0] * len(partition)
            for label, b in enumerate(chosen, start=1):
                marks[b] = label
            if any(len(b) == 1 and not m for b, m in zip(partition, marks, strict=True)):
                continue
            states.append(canonicalize(partition, marks))
    return sorted(states)


def orbit_representatives(k: int, l: int) -> list[BasisState]:
    """One state per S_l orbit: labels 1..l in order of least element."""
    return sorted({state.orbit_rep()[0] for state in enumerate_basis(k, l)})


class WeightedStateSum:
    """Linear combination of states with ZZ[Q] weights; zero terms are never stored."""

    def __init__(self, terms: dict[BasisState, Any] | None = None):
        self.terms: dict[BasisState, Any] = {}
        for state, weight in (terms or {}).items():
            self.add(state, weight)

    @classmethod
    def single(cls, state: BasisState, weight: Any = 1) -> WeightedStateSum:
        return cls({state: weight})

    def add(self, state: BasisState, weight: Any) -> None:
        total = self.terms.get(state, 0) + weight
        if total:
            self.terms[state] = total
        else:
            self.terms.pop(state, None)

    def scaled(self, weight: Any) -> WeightedStateSum:
        return WeightedStateSum({s: w * weight for s, w in self.terms.items()})

    def reduced(self) -> WeightedStateSum:
        """Drop every state with an unmarked singleton."""
        return WeightedStateSum({s: w for s, w in self.terms.items() if s.is_reduced})

    def items(self) -> Iterator[tuple[BasisState, Any]]:
        return iter(self.terms.items())

    def __iter__(self) -> Iterator[BasisState]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, state: BasisState) -> Any:
        return self.terms.get(state, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedStateSum):
            return NotImplemented
        return self.terms == other.terms

    def dump(self) -> str:
        return "\n".join(f"{self.terms[s]}\t{s.dump()}" for s in sorted(self.terms))
