"""Tests for the certified polynomial root finder."""
import math

import mpmath as mp
import pytest

from petersen_flow.exceptions import DegeneratePolynomialError
from petersen_flow.flows.assembler import FlowAssembler
from petersen_flow.flows.serialization import load_fixture
from petersen_flow.polynomials import FlowPolynomial
from petersen_flow.roots.finder import all_roots


def _linear(r):
    return FlowPolynomial((-r, 1))


@pytest.fixture
def mixed_poly():
    """(Q-1)(Q-2)(Q-3)(Q-4)(Q^2 - 5Q + 10)."""
    poly = FlowPolynomial((10, -5, 1))
    for r in (1, 2, 3, 4):
        poly = poly * _linear(r)
    return poly


def test_mixed_roots(mixed_poly):
    """Four integer roots and the pair 5/2 ± i√15/2."""
    roots = all_roots(mixed_poly, digits=30)
    assert roots.count == 6
    assert roots.degree == 6
    assert [round(r.real) for r in roots.real_roots] == [1, 2, 3, 4]
    pair = [r for r in roots.roots if not r.is_real]
    assert len(pair) == 2
    assert pair[0].imag == pytest.approx(-math.sqrt(15) / 2, abs=1e-12)
    assert pair[1].imag == pytest.approx(math.sqrt(15) / 2, abs=1e-12)
    assert all(r.radius <= mp.mpf(10) ** -30 for r in roots.roots)
    assert roots.nearest(2.5 + 1.9j).imag == pytest.approx(math.sqrt(15) / 2, abs=1e-12)


def test_repeated_roots():
    """Square-free splitting keeps multiplicities."""
    poly = _linear(1) * _linear(1) * _linear(2)
    roots = all_roots(poly, digits=20)
    assert len(roots.roots) == 2
    assert roots.count == 3
    assert roots.nearest(1).multiplicity == 2


def test_cube_roots():
    """The cube has real roots 1, 2 and δ ≈ 2.5466, plus one complex pair."""
    poly = FlowPolynomial((-64, 154, -137, 58, -12, 1))
    roots = all_roots(poly, digits=40)
    real = [r.real for r in roots.real_roots]
    assert len(real) == 3
    assert real[0] == pytest.approx(1.0)
    assert real[1] == pytest.approx(2.0)
    assert 2.54 < real[2] < 2.55
    assert roots.roots == sorted(roots.roots, key=lambda r: (r.real, r.imag))


def test_row_formatting():
    """Real roots print a zero imaginary part."""
    roots = all_roots(_linear(3) * _linear(5), digits=10)
    re, im, radius = roots.roots[0].row(10)
    assert re.startswith("3.0")
    assert im == "0"
    assert radius


def test_constant_rejected():
    """Constants have no roots to find."""
    with pytest.raises(DegeneratePolynomialError):
        all_roots(FlowPolynomial((7,)))


@pytest.mark.slow
def test_fixture_roots():
    """All 120 roots of the G(119,7) polynomial to 20 digits."""
    roots = all_roots(load_fixture().poly, digits=20)
    assert roots.count == 120
    for value in (1.0, 2.0, 3.0, 5.0000197675, 5.1653424423):
        nearest = roots.nearest(value)
        assert nearest.is_real
        assert nearest.real == pytest.approx(value, abs=1e-9)


@pytest.mark.slow
@pytest.mark.parametrize(
    ("n", "k", "expected"),
    [
        (28, 4, (4.0002086861, 4.3876416603)),
        (30, 5, (4.0000786673, 4.4867394006)),
    ],
)
def test_assembled_roots(run_config, n, k, expected):
    """Real roots above 4 of G(28,4) and G(30,5)."""
    flow = FlowAssembler(run_config).assemble(n, k)
    roots = all_roots(flow.poly, digits=20)
    for value in expected:
        nearest = roots.nearest(value)
        assert nearest.is_real
        assert nearest.real == pytest.approx(value, abs=1e-8)
