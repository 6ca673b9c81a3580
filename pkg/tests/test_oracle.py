import numpy as np
import pytest
from clikit.io import BufferedIO

from charstack.common import BudgetExceeded
from charstack.finite_field import finite_field
from charstack.oracle import (
    GammaSet,
    correspondence_oracle,
    cyclic_gamma_set,
    gamma_orbit_check,
    gamma_orbit_oracle,
    nonorient_oracle,
    orbit_prop_oracle,
    orbit_suite,
    punctured_oracle,
    run_cases,
)


def test_run_cases_keeps_order(monkeypatch):
    monkeypatch.setenv("CHARSTACK_NUM_THREADS", "3")
    assert run_cases(lambda x: x * x, [3, 1, 2, 5], "Squaring...") == [9, 1, 4, 25]


def test_run_cases_progress():
    io = BufferedIO()
    run_cases(abs, [-1, -2], "Taking absolute values...", io)
    error = io.fetch_error()
    assert "Taking absolute values..." in error
    assert "Done." in error


def test_gamma_set_validation():
    identity = np.arange(3)
    with pytest.raises(ValueError, match=r"not a permutation"):
        GammaSet("bad", np.array([0, 0, 1]), identity)
    with pytest.raises(ValueError, match=r"not an involution"):
        GammaSet("bad", identity, np.array([1, 2, 0]))
    with pytest.raises(ValueError, match=r"do not commute"):
        GammaSet("bad", np.array([1, 2, 0]), np.array([1, 0, 2]))


def test_cyclic_gamma_set():
    points = cyclic_gamma_set(finite_field(5, 2), 5)
    assert points.size == 24
    assert points.period() == 2
    assert cyclic_gamma_set(finite_field(5), 5).period() == 1
    assert cyclic_gamma_set(finite_field(5, 2), 5, 12).size == 12


def test_gamma_orbit_oracle():
    counts = gamma_orbit_oracle(5, 2)
    assert (counts.fixed[1], counts.twisted[1], counts.free[1]) == (2, 2, 1)
    assert gamma_orbit_oracle(3, 1).free[1] == 0
    with pytest.raises(BudgetExceeded):
        gamma_orbit_oracle(7, 8)
    with pytest.raises(ValueError, match=r"must be positive"):
        gamma_orbit_oracle(3, 0)


def test_gamma_orbit_check():
    assert gamma_orbit_check(7, 3).passed
    assert gamma_orbit_check(9, 2).passed


def test_orbit_prop_oracle():
    report = orbit_prop_oracle(cyclic_gamma_set(finite_field(5, 2), 5))
    assert report.passed
    assert report.inputs["bound"] == 2


def test_orbit_suite():
    report = orbit_suite(qs=(3, 5), dmax=3)
    assert report.passed
    assert "q=3.fixed[1]" in report
    assert "F25.fixed[1]" in report
    assert "mu12.sharp[1]" in report


def test_nonorient_oracle():
    report = nonorient_oracle(cases=((2, 2, 3), (2, 3, 3), (1, 1, 5)))
    assert report.passed
    assert report["n=2,r=2,q=3.count"] == 288
    assert report["n=2,r=3,q=3.count"] == 7872
    assert report["real_classes.n=2,q=3.count"] == 6
    assert report["idempotents.n=2,q=3.count"] == 14


def test_punctured_oracle():
    report = punctured_oracle(cases=((1, "2,3", 5), (1, "-1,-1", 5), (1, "1", 3), (2, "1", 3)))
    assert report.passed
    assert report["r=1,q=5,eigenvalues=2,3.count"] == 120
    assert report["r=1,q=5,eigenvalues=4,4.count"] == 4
    assert report["r=1,q=3,eigenvalues=1.count"] == 2


def test_punctured_oracle_rejects_bad_cases():
    with pytest.raises(ValueError, match=r"not generic"):
        punctured_oracle(cases=((1, "1,1", 5),))
    with pytest.raises(ValueError, match=r"prime field"):
        punctured_oracle(cases=((1, "1", 9),))


def test_correspondence_oracle():
    report = correspondence_oracle(cases=((1, 3), (2, 3)))
    assert report.passed
    assert report["n=1,q=3,class=0.counts"] == [4, 4]
    assert "n=2,q=3,class=7" in report
