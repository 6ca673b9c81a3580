import numpy as np
import pytest

from charstack.common import BudgetExceeded, ZeroDivisor
from charstack.finite_field import FiniteField, field_of_order, finite_field


@pytest.fixture(scope="module")
def f9():
    return finite_field(3, 2)


def test_invalid_characteristic():
    with pytest.raises(ValueError, match=r"odd prime"):
        FiniteField(2)
    with pytest.raises(ValueError, match=r"odd prime"):
        FiniteField(9)
    with pytest.raises(ValueError, match=r"must be positive"):
        FiniteField(3, 0)


def test_budget():
    with pytest.raises(BudgetExceeded):
        FiniteField(3, 13)


def test_generator(f9):
    assert f9.q == 9
    assert f9.order(f9.generator) == 8
    assert sorted(f9.exp_table.tolist()) == list(range(1, 9))


def test_field_axioms(f9):
    a, b = np.meshgrid(np.arange(9), np.arange(9))
    a, b = a.ravel(), b.ravel()
    assert (f9.mul(a, b) == f9.mul(b, a)).all()
    for c in range(9):
        assert (f9.mul(c, f9.add(a, b)) == f9.add(f9.mul(c, a), f9.mul(c, b))).all()
    nonzero = f9.nonzero()
    assert (f9.mul(nonzero, f9.inverse(nonzero)) == 1).all()
    assert (f9.sub(a, a) == 0).all()


def test_frobenius(f9):
    elements = np.arange(9)
    assert (f9.frobenius(f9.frobenius(elements)) == elements).all()
    fixed = elements[f9.frobenius(elements) == elements]
    assert fixed.tolist() == [0, 1, 2]


def test_zero(f9):
    with pytest.raises(ZeroDivisor):
        f9.inverse(0)
    with pytest.raises(ZeroDivisor):
        f9.order(0)
    assert f9.power(0, 3) == 0


def test_prime_field_arithmetic():
    f5 = finite_field(5)
    assert f5.mul(2, 3) == 1
    assert f5.add(4, 3) == 2
    assert f5.from_int(-1) == 4
    assert f5.power(2, 4) == 1


def test_roots_of_unity():
    f5 = finite_field(5)
    assert f5.roots_of_unity(4).tolist() == [1, 2, 3, 4]
    assert f5.roots_of_unity(2).tolist() == [1, 4]
    with pytest.raises(ValueError, match=r"roots of unity"):
        f5.roots_of_unity(3)


def test_field_of_order():
    assert field_of_order(25).e == 2
    assert field_of_order(7).p == 7
    with pytest.raises(ValueError, match=r"not a prime power"):
        field_of_order(15)
