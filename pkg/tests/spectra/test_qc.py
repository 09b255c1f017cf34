"""Tests for Q_c location and extrapolation."""
import math

import pytest

from petersen_flow.exceptions import NoSignChangeError, UnderdeterminedFitError
from petersen_flow.spectra.qc import REFERENCE_QC, bisect, extrapolate_qc, find_qc


def test_bisect():
    """Bisection brackets √2 to the requested width."""
    assert bisect(lambda x: x * x - 2, 0.0, 2.0, 1e-12) == pytest.approx(math.sqrt(2), abs=1e-11)
    with pytest.raises(NoSignChangeError):
        bisect(lambda x: x * x + 1, -1.0, 1.0)


def test_qc_width_two(builder):
    """Q_c(1) = 3, where Q - 2 overtakes the trivial eigenvalue."""
    result = find_qc(1, builder=builder)
    assert result.qc == pytest.approx(3.0, abs=1e-8)
    assert result.below == (2, "trivial")
    assert result.above == (0, "()")
    assert "Q_c(1)" in result.describe()


def test_qc_width_three(builder):
    """Q_c(2) = (5 + √5)/2."""
    result = find_qc(2, builder=builder)
    assert result.qc == pytest.approx((5 + math.sqrt(5)) / 2, abs=1e-8)
    assert result.qc == pytest.approx(REFERENCE_QC[2], abs=1e-9)


def test_qc_needs_change(builder):
    """A bracket with one dominant sector throughout is rejected."""
    with pytest.raises(NoSignChangeError):
        find_qc(1, bracket=(4.0, 5.0), builder=builder)


def test_extrapolation_reference():
    """Even and odd fits both land near 5.75."""
    report = extrapolate_qc()
    assert report.limit_even == pytest.approx(5.7588, abs=1e-3)
    assert report.limit_odd == pytest.approx(5.7407, abs=1e-3)
    assert report.limit == pytest.approx(5.75, abs=0.02)
    assert report.spread < 0.03


def test_extrapolation_of_constant():
    """A constant table extrapolates to itself."""
    report = extrapolate_qc({k: 5.0 for k in range(4, 12)})
    assert report.limit_even == pytest.approx(5.0)
    assert report.limit_odd == pytest.approx(5.0)


def test_extrapolation_needs_both_parities():
    """Too few even points cannot fix a quadratic."""
    with pytest.raises(UnderdeterminedFitError):
        extrapolate_qc({5: 4.9, 7: 5.2, 9: 5.4, 11: 5.5})


@pytest.mark.slow
@pytest.mark.parametrize("k", [3, 4, 5])
def test_qc_reference_table(builder, k):
    """Q_c(k) for strips of width 4 to 6."""
    assert find_qc(k, builder=builder).qc == pytest.approx(REFERENCE_QC[k], abs=1e-8)
