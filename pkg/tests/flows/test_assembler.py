"""Tests for flow polynomial assembly from block traces."""
import pytest

from petersen_flow.config.settings import RunConfig
from petersen_flow.exceptions import GraphDomainError
from petersen_flow.flows.assembler import FlowAssembler, FlowMethod
from petersen_flow.graphs.oracle import flow_poly_bruteforce, flow_poly_closed_gn1
from petersen_flow.graphs.petersen import build
from petersen_flow.polynomials import FlowPolynomial
from petersen_flow.traces.engine import TraceEngine


@pytest.fixture
def assembler(builder):
    """Assembler sharing the session builder, with no disk cache."""
    config = RunConfig()
    return FlowAssembler(config, builder, TraceEngine(config, use_disk_cache=False))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_ladder_closed_form(assembler, n):
    """k = 1 reproduces the cyclic ladder formula."""
    flow = assembler.assemble_complete(1, n)
    assert flow.poly == flow_poly_closed_gn1(n)
    assert flow.method is FlowMethod.COMPLETE
    assert flow.layers == n


@pytest.mark.parametrize(("k", "n"), [(1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (3, 2)])
def test_complete_matches_bruteforce(assembler, k, n):
    """Transfer assembly agrees with the subset expansion on small graphs."""
    flow = assembler.assemble_complete(k, n)
    assert flow.poly == flow_poly_bruteforce(build(n * k, k))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_raw_matches_complete(assembler, n):
    """Undeflated and deflated sums give the same polynomial for k = 2."""
    assert assembler.assemble_raw(2, n).poly == assembler.assemble_complete(2, n).poly


def test_g8_2(assembler):
    """G(8, 2) from four layers of width 3."""
    expected = FlowPolynomial((-8976, 30664, -44738, 37233, -19748, 6998, -1670, 260, -24, 1))
    assert assembler.assemble_complete(2, 4).poly == expected


def test_cross_check_and_provenance(assembler):
    """Cross-checking succeeds and every sector is recorded."""
    flow = assembler.assemble_complete(2, 3, cross_check=True)
    assert set(flow.provenance) == {"0:()", "1:(1)", "2:(2)"}
    assert flow.provenance["2:(2)"] == (2, 2, (2,), 3)


def test_assemble_dispatch(assembler):
    """assemble() picks brute force or transfer by method."""
    brute = assembler.assemble(5, 2, FlowMethod.BRUTE)
    assert brute.method is FlowMethod.BRUTE
    assert brute.poly(5) == 240
    raw = assembler.assemble(6, 3, FlowMethod.RAW)
    assert raw.method is FlowMethod.RAW
    assert raw.poly == flow_poly_bruteforce(build(6, 3))


def test_domain_errors(assembler):
    """k must divide n, n/k >= 2 and k within the complete range."""
    with pytest.raises(GraphDomainError):
        assembler.assemble(5, 2)
    with pytest.raises(GraphDomainError):
        assembler.assemble_complete(2, 1)
    with pytest.raises(GraphDomainError):
        assembler.assemble_complete(8, 2)


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 8, 10])
def test_long_ladders(assembler, n):
    """Longer ladders against the closed form."""
    assert assembler.assemble_complete(1, n).poly == flow_poly_closed_gn1(n)


@pytest.mark.slow
def test_width_five_against_bruteforce(assembler):
    """G(8, 4), two layers of width 5."""
    assert assembler.assemble_complete(4, 2).poly == flow_poly_bruteforce(build(8, 4), jobs=4)
