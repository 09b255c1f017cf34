"""Tests for exact trace polynomials."""
from fractions import Fraction

import pytest

from petersen_flow.combinatorics.amplitudes import YoungDiagram
from petersen_flow.config.settings import RunConfig
from petersen_flow.traces.engine import TraceEngine, degree_bound, magnitude_bits
from petersen_flow.transfer.builder import BlockBuilder
from petersen_flow.transfer.evaluation import exact_trace_power


@pytest.fixture
def engine():
    """Engine without disk cache."""
    return TraceEngine(RunConfig(), use_disk_cache=False)


def test_degree_bound():
    """n·k for ℓ <= 1, shrinking by n per extra link."""
    assert degree_bound(3, 0, 4) == 12
    assert degree_bound(3, 1, 4) == 12
    assert degree_bound(3, 3, 4) == 4


@pytest.mark.parametrize("n", [2, 3, 5])
def test_width_two_traces(engine, builder, n):
    """(Q - 2)^n and (Q - 3)^n for k = 1."""
    plain = engine.trace_polynomial(builder.block(1, 0, YoungDiagram(())), n)
    linked = engine.trace_polynomial(builder.block(1, 1, YoungDiagram((1,))), n)
    for q in range(-3, 9):
        assert plain(Fraction(q)) == (q - 2) ** n
        assert linked(Fraction(q)) == (q - 3) ** n
    assert plain.is_integral()


@pytest.mark.parametrize(("l", "parts"), [(0, ()), (1, (1,)), (2, (2,)), (2, (1, 1))])
def test_trace_matches_exact_power(engine, builder, l, parts):
    """Reconstructed traces agree with exact rational powering off the sample grid."""
    block = builder.block(3, l, YoungDiagram(parts))
    trace = engine.trace_polynomial(block, 3)
    for q in (Fraction(-2), Fraction(7, 2), Fraction(11)):
        assert trace(q) == exact_trace_power(block, q, 3)


def test_empty_block_trace(engine, builder):
    """Fully deflated sectors contribute zero."""
    block = builder.block(2, 3, YoungDiagram((3,)))
    assert block.dimension == 0
    assert engine.trace_polynomial(block, 4).coefficients == (0,)


def test_plan_overrides():
    """Explicit primes and points replace the automatic plan."""
    config = RunConfig(primes=[65521, 65519, 65497, 65479], points=[1, 2, 3, 4, 5, 6, 7])
    block = BlockBuilder(config, use_disk_cache=False).block(1, 0, YoungDiagram(()))
    plan = TraceEngine(config, use_disk_cache=False).plan(block, 3)
    assert plan.primes == (65521, 65519, 65497, 65479)
    assert plan.points == (1, 2, 3, 4, 5, 6, 7)
    assert plan.surplus_points == (5, 6, 7)
    assert plan.scaling[2] == -(2**6)
    assert plan.bits >= magnitude_bits(block, 3, 1)


def test_disk_cache_reuse(run_config, builder):
    """A second engine reads the stored polynomial."""
    block = builder.block(2, 1, YoungDiagram((1,)))
    first = TraceEngine(run_config).trace_polynomial(block, 3)
    assert any((run_config.cache_dir / "traces").iterdir())
    second = TraceEngine(run_config).trace_polynomial(block, 3)
    assert second == first
