"""Tests for reduced partition states."""
import pytest

from petersen_flow.algebra.states import (
    BasisState,
    WeightedStateSum,
    canonicalize,
    enumerate_basis,
    orbit_representatives,
)
from petersen_flow.combinatorics.counting import dim_marked_nosingleton, orbit_count
from petersen_flow.exceptions import PartitionStateError


@pytest.mark.parametrize(("k", "l"), [(k, l) for k in range(1, 4) for l in range(k + 2)])
def test_basis_size(k, l):
    """The labelled basis has |Ã_{k+1}^{(l)}| states."""
    assert len(enumerate_basis(k, l)) == dim_marked_nosingleton(k + 1, l)


@pytest.mark.parametrize(("k", "l"), [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (3, 4)])
def test_orbit_representatives(k, l):
    """One representative per S_l orbit."""
    assert len(orbit_representatives(k, l)) == orbit_count(k, l)


def test_basis_is_sorted_and_reduced():
    """States come out in encoding order with no unmarked singleton."""
    basis = enumerate_basis(3, 2)
    assert basis == sorted(basis)
    assert all(s.is_reduced for s in basis)
    assert len(set(basis)) == len(basis)


def test_canonicalize_orders_blocks():
    """Block order in the input does not matter."""
    a = canonicalize([[2, 3], [1, 0]], [1, 0])
    b = canonicalize([[0, 1], [3, 2]], [0, 1])
    assert a == b
    assert a.blocks == ((0, 1), (2, 3))
    assert a.block_of(3) == 1
    assert a.ell == 1


def test_canonicalize_rejects_unmarked_singleton():
    """Reduced construction refuses an unmarked singleton."""
    with pytest.raises(PartitionStateError):
        canonicalize([[0], [1, 2]], [0, 1])
    assert canonicalize([[0], [1, 2]], [0, 1], reduced=False).has_unmarked_singleton()


def test_state_validation():
    """Bad partitions and mark labels are rejected."""
    with pytest.raises(PartitionStateError):
        BasisState(3, ((0, 1),), (0,))
    with pytest.raises(PartitionStateError):
        BasisState(2, ((0,), (1,)), (1, 1))
    with pytest.raises(PartitionStateError):
        BasisState(2, ((1,), (0,)), (1, 2))


def test_orbit_rep_and_relabel():
    """A labelled state is its representative relabelled by tau."""
    state = canonicalize([[0, 1], [2, 3]], [2, 1])
    rep, tau = state.orbit_rep()
    assert rep.marks == (1, 2)
    assert tau == (1, 0)
    assert rep.relabel(tau) == state


def test_json_round_trip():
    """States survive JSON encoding."""
    state = canonicalize([[0, 2], [1, 3]], [0, 1])
    assert BasisState.from_json(state.to_json()) == state


def test_weighted_sum_drops_zeros():
    """Cancelling terms disappear and reduced() filters singletons."""
    s = canonicalize([[0, 1]], [0])
    t = canonicalize([[0], [1]], [0, 0], reduced=False)
    vector = WeightedStateSum({s: 2, t: 3})
    vector.add(s, -2)
    assert s not in vector
    assert vector[t] == 3
    assert len(vector.reduced()) == 0
    assert vector.scaled(2)[t] == 6


@pytest.mark.parametrize(
    ("k", "l"), [(4, l) for l in range(6)] + [(5, l) for l in range(4)]
)
def test_basis_size_wider_strips(k, l):
    """Cardinalities keep matching the closed count for k = 4 and 5."""
    basis = enumerate_basis(k, l)
    assert len(basis) == dim_marked_nosingleton(k + 1, l)
    assert all(s.size == k + 1 and s.ell == l for s in basis)
