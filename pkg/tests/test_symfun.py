from fractions import Fraction

import pytest

from charstack.algebra import symbols
from charstack.common import BasisMismatch, BoundExceeded, CutoffExceeded
from charstack.partitions import Partition, partitions_of
from charstack.plethysm import pleth_exp, pleth_log
from charstack.series import TruncatedSeries
from charstack.symfun import (
    SymFunc,
    SymFuncDomain,
    hall_inner,
    macdonald_modified,
    monomial_coefficient,
    principal_specialization,
    transition,
)

P = Partition


def element(basis, *parts, cutoff=6):
    return SymFunc.basis_element(basis, *(P(p) for p in parts), cutoff=cutoff)


def test_complete_in_monomials():
    assert element("h", (2,)).to("m") == element("m", (2,)) + element("m", (1, 1))
    assert element("h", (1, 1)).to("m") == element("m", (2,)) + 2 * element("m", (1, 1))
    assert transition("h", "m", 2)[P((2,))][P((1, 1))] == 1


def test_schur_in_monomials():
    assert element("s", (2, 1)).to("m") == element("m", (2, 1)) + 2 * element("m", (1, 1, 1))


def test_power_sums_in_monomials():
    assert element("p", (1, 1)).to("m") == element("m", (2,)) + 2 * element("m", (1, 1))


def test_basis_roundtrip():
    for lam in partitions_of(4):
        for basis in ("m", "p", "h"):
            f = element("s", lam.parts)
            assert f.to(basis).to("s") == f


def test_unknown_basis():
    with pytest.raises(ValueError, match=r"Unknown basis"):
        element("e", (1,))


def test_products():
    assert element("h", (1,)) * element("h", (1,)) == element("h", (1, 1))
    assert element("p", (2,)) * element("p", (1,)) == element("p", (2, 1))


def test_products_above_cutoff_vanish():
    assert (element("p", (2,), cutoff=2) * element("p", (1,), cutoff=2)).is_zero


def test_key_above_cutoff():
    with pytest.raises(CutoffExceeded):
        element("p", (3,), cutoff=2)


def test_hall_inner():
    assert hall_inner(element("p", (2,)), element("p", (2,))) == 2
    assert hall_inner(element("p", (1, 1)), element("p", (1, 1))) == 2
    assert hall_inner(element("s", (2, 1)), element("s", (2, 1))) == 1
    assert hall_inner(element("s", (2, 1)), element("s", (3,))) == 0
    assert hall_inner(element("m", (2,)), element("h", (2,))) == 1


def test_hall_inner_mismatch():
    with pytest.raises(BasisMismatch):
        hall_inner(element("p", (1,)), SymFunc.basis_element("p", P((1,)), P((1,))))


def test_monomial_coefficient_two_sets():
    f = SymFunc.basis_element("h", P((2,)), P((1,)))
    assert monomial_coefficient(f, P((1, 1)), P((1,))) == 1
    assert monomial_coefficient(f, P((2,)), P((1,))) == 1
    with pytest.raises(BasisMismatch):
        monomial_coefficient(f, P((2,)))


def test_principal_specialization(q):
    assert principal_specialization(element("h", (2,)), 2) == q ** 2 + q + 1
    assert principal_specialization(element("p", (2,)), 2) == q ** 2 + 1
    assert principal_specialization(element("m", (1, 1)), 2) == q


def test_adams_with_coefficients():
    z, _ = symbols("z w")
    domain = SymFuncDomain(1, ("z", "w"), 6)
    f = element("p", (1,)) * z
    assert domain.adams(f, 2) == element("p", (2,)) * z ** 2


def test_exp_of_p1_is_complete():
    """Exp(p_1 T) = Σ h_n T^n."""
    domain = SymFuncDomain(1, ("z", "w"), 4)
    g = TruncatedSeries.from_coefficients(domain, [0, element("p", (1,), cutoff=4)], 4)
    f = pleth_exp(g)
    for n in range(5):
        assert f.coeff(n) == SymFunc.basis_element("h", P((n,) if n else ()), cutoff=4)
    assert pleth_log(f) == g


def test_invert_non_scalar():
    domain = SymFuncDomain(1, ("z", "w"), 4)
    with pytest.raises(ValueError, match=r"not an invertible constant"):
        domain.invert(element("p", (1,), cutoff=4))


def test_macdonald_degree_two():
    q, t = symbols("q t")
    two = macdonald_modified(P((2,)))
    assert two.coefficient(P((2,))) == 1
    assert two.coefficient(P((1, 1))) == 1 + q
    one_one = macdonald_modified(P((1, 1)))
    assert one_one.coefficient(P((2,))) == 1
    assert one_one.coefficient(P((1, 1))) == 1 + t


def test_macdonald_hook_shape():
    q, t = symbols("q t")
    f = macdonald_modified(P((2, 1)))
    assert f.coefficient(P((3,))) == 1
    assert f.coefficient(P((2, 1))) == 1 + q + t
    assert f.coefficient(P((1, 1, 1))) == 1 + 2 * q + 2 * t + q * t


def test_macdonald_at_one_is_h1_power():
    """H̃_λ(x; 1, 1) = h_1^n."""
    f = macdonald_modified(P((2, 1))).map_coefficients(lambda c: c.evaluate(q=1, t=1))
    assert f == element("h", (1, 1, 1))


@pytest.mark.parametrize("lam", [lam for n in range(1, 6) for lam in partitions_of(n)], ids=str)
def test_macdonald_q_t_duality(lam):
    """H̃_λ(x; q, t) = H̃_λ'(x; t, q)."""
    assert macdonald_modified(lam, parameters=("t", "q")) == macdonald_modified(lam.conjugate)


@pytest.mark.parametrize("lam", [lam for n in range(1, 5) for lam in partitions_of(n)], ids=str)
def test_macdonald_extreme_schur_coefficients(lam):
    q, t = symbols("q t")
    f = macdonald_modified(lam)
    row = SymFunc.basis_element("s", P((lam.size,)))
    column = SymFunc.basis_element("s", P((1,) * lam.size))
    assert hall_inner(f, row) == 1
    assert hall_inner(f, column) == q ** lam.conjugate.n * t ** lam.n


def test_macdonald_bound():
    with pytest.raises(BoundExceeded):
        macdonald_modified(P((4, 3)))


def test_scalar():
    assert SymFunc.scalar(Fraction(3)) == 3
    assert SymFunc.zero().is_zero
