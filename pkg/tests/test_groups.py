import numpy as np
import pytest

from charstack.common import BudgetExceeded, NotClassConstant
from charstack.groups import (
    build_group,
    correspondence_check,
    eta_counts,
    group_order,
    idempotent_count,
    real_class_count,
    rep_count,
)


@pytest.fixture(scope="module")
def gl1_f5():
    return build_group(1, 5)


@pytest.fixture(scope="module")
def gl2_f3():
    return build_group(2, 3)


def test_orders(gl1_f5, gl2_f3):
    assert gl1_f5.order == 4
    assert gl1_f5.num_classes == 4
    assert gl2_f3.order == 48
    assert gl2_f3.num_classes == 8
    assert build_group(2, 5).order == 480
    assert group_order(3, 3) == 11232


def test_invalid_groups():
    with pytest.raises(ValueError, match=r"not prime"):
        build_group(2, 9)
    with pytest.raises(ValueError, match=r"must be positive"):
        build_group(0, 3)
    with pytest.raises(BudgetExceeded):
        build_group(3, 5)


def test_elements(gl2_f3):
    assert gl2_f3.element([[1, 0], [0, 1]]) == gl2_f3.identity
    with pytest.raises(ValueError, match=r"not invertible"):
        gl2_f3.element([[1, 1], [1, 1]])
    with pytest.raises(ValueError, match=r"Expected a 2x2 matrix"):
        gl2_f3.element([[1]])


def test_sigma(gl2_f3):
    """σ(g) is the inverse transpose."""
    g = gl2_f3.element([[1, 1], [0, 1]])
    assert gl2_f3.sigma[g] == gl2_f3.element([[1, 0], [2, 1]])
    d = gl2_f3.diagonal([2, 1])
    assert gl2_f3.sigma[d] == d


def test_eta_counts(gl1_f5):
    assert eta_counts(gl1_f5, "square").tolist() == [2, 0, 0, 2]
    assert eta_counts(gl1_f5, "sigma").tolist() == [4, 0, 0, 0]
    with pytest.raises(ValueError, match=r"Unknown kind"):
        eta_counts(gl1_f5, "cube")


def test_class_function(gl2_f3):
    with pytest.raises(NotClassConstant):
        gl2_f3.class_function(np.arange(gl2_f3.order))


def test_convolution_levels(gl2_f3):
    eta = eta_counts(gl2_f3, "square")
    element = gl2_f3.convolve(eta, eta, "element")
    by_class = gl2_f3.convolve(eta, eta, "class")
    assert (element == by_class).all()
    with pytest.raises(ValueError, match=r"Unknown convolution level"):
        gl2_f3.convolve(eta, eta, "matrix")


def test_rep_counts(gl1_f5, gl2_f3):
    assert rep_count(gl1_f5, "untwisted", 1) == 2
    assert rep_count(gl1_f5, "twisted", 1) == 4
    assert rep_count(gl2_f3, "untwisted", 2) == 288
    assert rep_count(gl2_f3, "untwisted", 3) == 7872
    with pytest.raises(ValueError, match=r"Unknown twist"):
        rep_count(gl1_f5, "mirrored", 1)


def test_rep_count_with_classes():
    """A twisted pair a σ(a) x = 1 with x = diag(2, 3) over F_5."""
    group = build_group(2, 5)
    c = int(group.class_of[group.diagonal([2, 3])])
    assert rep_count(group, "twisted", 1, [c]) == 120
    with pytest.raises(ValueError, match=r"out of range"):
        rep_count(group, "twisted", 1, [group.num_classes])


def test_real_classes_and_idempotents(gl2_f3):
    assert real_class_count(gl2_f3) == 6
    assert idempotent_count(2, 3) == 14
    assert idempotent_count(1, 5) == 2


def test_correspondence(gl2_f3):
    group = build_group(1, 3)
    assert correspondence_check(group, group.identity) == (4, 4, True)
    for h in gl2_f3.class_representatives:
        count_a, count_b, equal = correspondence_check(gl2_f3, int(h))
        assert equal, (count_a, count_b)


def test_multiplication_table_budget():
    group = build_group(2, 11)
    with pytest.raises(BudgetExceeded, match=r"element-level budget"):
        group.multiplication_table
