from fractions import Fraction

import pytest

from charstack.common import ExpOfNonzeroConstant, InverseOfNonUnit, LogOfNonUnit
from charstack.series import RationalDomain, TruncatedSeries, series_arith

DOMAIN = RationalDomain(("q",))


def series(*coefficients, cutoff=6):
    return TruncatedSeries.from_coefficients(DOMAIN, coefficients, cutoff)


def test_padding_and_cutoff():
    f = series(1, 2, cutoff=4)
    assert f.cutoff == 4
    assert f.coeff(3) == 0
    assert f.coeff(-1) == 0
    with pytest.raises(IndexError, match=r"beyond the cutoff"):
        f.coeff(5)


def test_negative_cutoff():
    with pytest.raises(ValueError, match=r"non-negative"):
        series(1, cutoff=-1)


def test_geometric_inverse():
    assert series(1, -1).inverse() == series(*[1] * 7)


def test_inverse_of_non_unit():
    with pytest.raises(InverseOfNonUnit):
        series(0, 1).inverse()


def test_log_of_geometric():
    log = series(1, -1).inverse().log()
    assert [log.coeff(n) for n in range(1, 7)] == [Fraction(1, n) for n in range(1, 7)]


def test_exp_log_roundtrip(q):
    f = series(1, q, q ** 2 + 1, 0, 3 * q)
    assert f.log().exp() == f


def test_log_needs_unit():
    with pytest.raises(LogOfNonUnit, match=r"not 1"):
        series(2, 1).log()


def test_exp_needs_zero_constant():
    with pytest.raises(ExpOfNonzeroConstant, match=r"not 0"):
        series(1, 1).exp()


def test_power_half(q):
    f = series(1, q)
    root = f.power(Fraction(1, 2))
    assert root * root == f


def test_cutoff_of_mixed_series():
    f = series(1, 1, cutoff=3) + series(1, 1, cutoff=6)
    assert f.cutoff == 3
    assert f.coeff(1) == 2


def test_stretch_and_sign_flip():
    f = series(1, 1, 1, 1)
    assert f.stretch(2) == series(1, 0, 1, 0, 1, 0, 1)
    assert f.sign_flip() == series(1, -1, 1, -1)


def test_first_difference():
    assert series(1, 2, 3).first_difference(series(1, 2, 4)) == 2
    assert series(1, 2, 3).first_difference(series(1, 2, 3)) is None


def test_series_arith():
    f = series(1, -1)
    assert series_arith("mul", f, series_arith("inverse", f)) == series(1)
    assert series_arith("coeff", f, d=1) == -1
    with pytest.raises(ValueError, match=r"Unknown series operation"):
        series_arith("sqrt", f)


def test_substitute(q):
    f = series(1, q, q ** 2)
    assert f.substitute({"q": 2}) == series(1, 2, 4)


def test_str(q):
    f = series(1, 2, q + 3, 2 * q + 6, q ** 2 + 4 * q + 9, cutoff=4)
    assert str(f) == "1 + 2*T + (q + 3)*T^2 + (2*q + 6)*T^3 + (q^2 + 4*q + 9)*T^4 + O(T^5)"
    assert str(series(1, -1, cutoff=2)) == "1 - T + O(T^3)"
