"""Tests for accumulation-point classification."""
import pytest

from petersen_flow.spectra.bkw import FeatureKind, Parity, classify_point, parity_classify
from petersen_flow.spectra.eigen import leading_eigs
from petersen_flow.spectra.qc import REFERENCE_QC


def test_parity_table():
    """Sign of the amplitude product and the eigenvalue relation fix the parity."""
    assert parity_classify(2, -2, 1, 1) is Parity.ODD_N
    assert parity_classify(2, -2, 1, -1) is Parity.EVEN_N
    assert parity_classify(2, 2, 1, 1) is Parity.NON_REAL
    assert parity_classify(2, 2, 1, -1) is Parity.ALL_N
    assert parity_classify(2, 1, 1, 1) is None
    assert parity_classify(2, -2, 0, 1) is None


def test_curve_point_at_three(builder):
    """k = 1, Q = 3: |Q - 2| meets the trivial eigenvalue, with zeros for odd n."""
    feature = classify_point(1, 3.0, builder=builder)
    assert feature is not None
    assert feature.kind is FeatureKind.CURVE
    assert set(feature.witnesses) == {(0, "()"), (2, "trivial")}
    assert feature.parity is Parity.ODD_N
    assert "curve-b" in feature.describe()


def test_isolated_point_at_one(builder):
    """k = 1, Q = 1: the dominant Q - 3 sector has amplitude Q - 1 = 0."""
    feature = classify_point(1, 1.0, builder=builder)
    assert feature is not None
    assert feature.kind is FeatureKind.ISOLATED
    assert feature.witnesses == ((1, "(1)"),)


def test_ordinary_point(builder):
    """k = 1, Q = 5 has a strictly dominant sector with nonzero amplitude."""
    assert classify_point(1, 5.0, builder=builder) is None


@pytest.mark.slow
def test_isolated_point_at_three_width_five(builder):
    """k = 4, Q = 3 is an isolated limiting point."""
    feature = classify_point(4, 3.0, builder=builder)
    assert feature is not None
    assert feature.kind is FeatureKind.ISOLATED


@pytest.mark.slow
def test_ordinary_point_width_six(builder):
    """k = 5, Q = 5 lies off every limiting set."""
    assert classify_point(5, 5.0, builder=builder) is None


@pytest.mark.slow
def test_equal_pair_at_qc_width_seven(builder):
    """k = 6 at Q_c(6): two equal eigenvalues near 169.757 with positive amplitudes."""
    sample = leading_eigs(6, REFERENCE_QC[6], builder=builder)
    (_, mu1), (_, mu2) = sample.ranked()[:2]
    assert abs(mu1) == pytest.approx(169.757, abs=1e-3)
    assert abs(mu2) == pytest.approx(abs(mu1), rel=1e-8)
    feature = classify_point(6, REFERENCE_QC[6], sample=sample, builder=builder)
    assert feature is not None
    assert feature.kind is FeatureKind.CURVE
    assert feature.parity is Parity.NON_REAL


@pytest.mark.slow
def test_opposite_pair_at_qc_width_eight(builder):
    """k = 7 at Q_c(7): opposite eigenvalues give real zeros for odd n."""
    feature = classify_point(7, REFERENCE_QC[7], builder=builder)
    assert feature is not None
    assert feature.kind is FeatureKind.CURVE
    assert feature.parity is Parity.ODD_N
