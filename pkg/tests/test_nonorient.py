from fractions import Fraction

import pytest

from charstack.common import RangeError
from charstack.nonorient import (
    IDENTITIES,
    KNOWN_LEADING_COEFFICIENTS,
    e_count_nonorient,
    gamma_counts_gm,
    gl_order,
    i_series,
    integrality_check,
    involution_count,
    leading_coefficient_check,
    m_series,
    m_series_agreement,
    maintheo_suite,
    mcoeff,
    mobius_orbit_counts,
    parity_pattern,
    product_formula_m,
    q_binomial,
    representation_count_polynomial,
    v_coeffs,
    v_coeffs_k,
    verify_identity,
    w_coeffs,
    z_series,
)
from charstack.plethysm import pleth_log
from charstack.series import TruncatedSeries


def test_involution_counts(q):
    assert involution_count(0) == 1
    assert involution_count(1) == 2
    assert involution_count(2) == q ** 2 + q + 2
    assert involution_count(3) == 2 * q ** 4 + 2 * q ** 3 + 2 * q ** 2 + 2
    expected = (
        2 * q ** 12 + 2 * q ** 11 + 4 * q ** 10 + 4 * q ** 9 + 6 * q ** 8 + 4 * q ** 7
        + 4 * q ** 6 + 2 * q ** 5 + 2 * q ** 4 + 2
    )
    assert involution_count(5) == expected


def test_involution_count_over_f3():
    """x^2 = 1 in GL_2(F_3): the identity, its negative and 12 reflections."""
    assert involution_count(2).evaluate(q=3) == 14


def test_q_binomial(q):
    assert q_binomial(4, 2) == q ** 4 + q ** 3 + 2 * q ** 2 + q + 1
    assert q_binomial(3, 0) == 1
    with pytest.raises(RangeError, match=r"0 <= r <= n"):
        q_binomial(2, 3)


def test_gl_order(q):
    assert gl_order(2) == (q ** 2 - 1) * (q ** 2 - q)
    assert gl_order(2).evaluate(q=3) == 48


def test_z_series(q):
    z = z_series(1, 4)
    assert z.coeff(0) == 1
    assert z.coeff(1) == q - 1
    assert z.coeff(2) == (q ** 2 - 1) ** 2 / q


def test_v_coefficients(q):
    assert [v_coeffs(0, n) for n in range(1, 5)] == [1, 1, 1, 1]
    assert v_coeffs(-1, 1) == 1 / (q - 1)
    assert v_coeffs(-1, 2) == 1 / ((q ** 2 - 1) * (q - 1))


def test_v_coefficients_at_half_integers():
    assert v_coeffs(0, Fraction(3, 2)) == 0
    assert v_coeffs_k(0, Fraction(1, 2), 2) == 0


def test_v_coefficients_index():
    with pytest.raises(RangeError, match=r"indexed from 1"):
        v_coeffs(0, 0)


def test_v_coefficients_k():
    assert v_coeffs_k(0, 2, 2) == Fraction(3, 2)
    assert v_coeffs_k(0, 3, 2) == 1
    assert v_coeffs_k(0, 1, 1) == v_coeffs(0, 1)


def test_w_coefficients(q):
    assert w_coeffs(0, 1) == 2
    assert w_coeffs(0, 2) == q
    assert w_coeffs(-1, 1) == 2 / (q - 1)
    assert w_coeffs(-1, 2) == 1 / (q + 1)
    assert w_coeffs(1, 1) == 2 * (q - 1)
    with pytest.raises(RangeError):
        w_coeffs(0, 0)


def test_m_series_zero(q):
    expected = "1 + 2*T + (q + 3)*T^2 + (2*q + 6)*T^3 + (q^2 + 4*q + 9)*T^4 + O(T^5)"
    assert str(m_series(0, 4)) == expected
    assert mcoeff(0, 2) == q + 3


def test_e_count_one_cross_cap_more(q):
    assert e_count_nonorient(1, 1) == 2 * q - 2
    expected = (
        2 * q ** 9 - 2 * q ** 8 + 4 * q ** 7 - 12 * q ** 6 + 10 * q ** 5
        - 6 * q ** 4 + 6 * q ** 3 - 2 * q ** 2 + 2 * q - 2
    )
    assert e_count_nonorient(1, 3) == expected


def test_log_does_not_commute_with_sign_flip(q):
    """Log I(q,-T) is not read off Log I(q,T); it is Log of the r = 1 series."""
    involutions = i_series(6)
    flipped = pleth_log(involutions.sign_flip())
    assert flipped != -pleth_log(involutions)
    assert flipped != pleth_log(involutions).sign_flip()
    expected = TruncatedSeries.from_coefficients(involutions.domain, [0, 2 / (q - 1), 1 / (q + 1), 0, 0, 0, 0], 6)
    assert flipped == expected
    assert pleth_log(m_series(-1, 6)) == expected


def test_e_count():
    assert str(e_count_nonorient(1, 2)) == "3*q^4 - 2*q^3 - 3*q^2 + 2"
    assert e_count_nonorient(-1, 2).evaluate(q=3) == Fraction(7, 24)
    assert e_count_nonorient(0, 1) == 2


def test_representation_counts():
    assert representation_count_polynomial(0, 2).evaluate(q=3) == 288
    assert representation_count_polynomial(1, 2).evaluate(q=3) == 7872


def test_product_formula(q):
    assert product_formula_m(0, 6) == m_series(0, 6)
    assert m_series_agreement(rhos=(-1, 0, 1), cutoff=5).passed


def test_gm_orbits(q):
    counts = gamma_counts_gm(4)
    assert counts.fixed[1] == 2
    assert counts.twisted[1] == (q - 1) / 2
    assert counts.sharp[1] == q - 3
    assert counts.free[1] == (q - 3) / 2
    assert counts.fixed[2] == 0


def test_gm_orbits_at_five():
    counts = gamma_counts_gm(2)
    assert [c.evaluate(q=5) for c in (counts.fixed[1], counts.twisted[1], counts.free[1])] == [2, 2, 1]
    assert counts.free[1].evaluate(q=3) == 0


def test_mobius_counts_with_integers():
    fixed, twisted, free, sharp = mobius_orbit_counts(lambda s: 2, lambda s: 5 ** s - 1, lambda s: 5 ** s - 3, 2)
    assert (fixed[1], twisted[1], free[1], sharp[1]) == (2, 2, 1, 2)
    with pytest.raises(RangeError):
        mobius_orbit_counts(lambda s: 0, lambda s: 0, lambda s: 0, 0)


@pytest.mark.parametrize("name", sorted(IDENTITIES))
def test_identities(name):
    result = verify_identity(name, 6)
    assert result.passed, result.detail


def test_identity_errors():
    with pytest.raises(ValueError, match=r"Unknown identity"):
        verify_identity("nonsense")
    with pytest.raises(RangeError, match=r"at least 4"):
        verify_identity("i_log", 3)


def test_maintheo_suite():
    report = maintheo_suite(seed=1, trials=3, cutoff=5)
    assert report.passed
    assert "gm.log_f0" in report
    assert len(report.checks) == 12


def test_integrality():
    report = integrality_check(rhos=(0, 1), nmax=4)
    assert report.passed
    assert len(report) == 8


def test_parity_is_never_fatal():
    report = parity_pattern(rho_max=1, nmax=3)
    assert report.passed
    assert all(not check.fatal for check in report.checks)


@pytest.mark.slow
def test_leading_coefficients():
    report = leading_coefficient_check()
    assert len(report.checks) == len(KNOWN_LEADING_COEFFICIENTS)
    assert report.passed, [c.detail for c in report.checks if not c.passed]
