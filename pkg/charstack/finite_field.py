"""Finite fields of odd characteristic with table-driven arithmetic.

Elements of F_q, q = p^e, are the integers ``0 .. q-1``; the base-p digits of
an integer are the coefficients of a polynomial of degree below `e`, reduced
modulo a fixed irreducible polynomial. Multiplication goes through discrete
logarithm tables built from a generator of the multiplicative group, so every
operation accepts numpy arrays as well as ints.
"""
import dataclasses
import functools
import itertools
from typing import List, Optional, Tuple, Union

import numpy as np
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem

from charstack.common import ORBIT_BUDGET, BudgetExceeded, ZeroDivisor, prime_factors

Elements = Union[int, np.ndarray]


def _smallest_irreducible(p: int, e: int) -> Tuple[int, ...]:
    """The monic irreducible polynomial of degree `e` over F_p with the smallest coefficient tuple."""
    for tail in itertools.product(range(p), repeat=e):
        candidate = [1] + list(tail)
        if gf_irreducible_p(candidate, p, ZZ):
            return tuple(candidate)
    raise AssertionError(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclasses.dataclass(frozen=True, eq=False)
class FiniteField:
    """The field with ``p**e`` elements.

    Arguments:
        p: An odd prime.
        e: Degree over the prime field.

    Raises:
        ValueError: if `p` is not an odd prime or `e` is not positive.
        BudgetExceeded: if the field has more than ``ORBIT_BUDGET`` elements.
    """

    p: int
    e: int = 1
    modulus: Tuple[int, ...] = dataclasses.field(init=False)
    generator: int = dataclasses.field(init=False)
    exp_table: np.ndarray = dataclasses.field(init=False, repr=False)
    log_table: np.ndarray = dataclasses.field(init=False, repr=False)
    digits: np.ndarray = dataclasses.field(init=False, repr=False)

    def __post_init__(self):
        if self.p == 2 or not sympy.isprime(self.p):
            raise ValueError(f"Fields of odd characteristic only, `{self.p}` is not an odd prime.")
        if self.e < 1:
            raise ValueError(f"Field degree must be positive, found `{self.e}`.")
        if self.q > ORBIT_BUDGET:
            raise BudgetExceeded(f"F_{self.q} has more than {ORBIT_BUDGET} elements.")
        object.__setattr__(self, "modulus", _smallest_irreducible(self.p, self.e))
        weights = self.p ** np.arange(self.e, dtype=np.int64)
        digits = (np.arange(self.q, dtype=np.int64)[:, None] // weights) % self.p
        object.__setattr__(self, "digits", digits)
        generator = self._find_generator()
        object.__setattr__(self, "generator", generator)

        exp_table = np.zeros(self.q - 1, dtype=np.int64)
        log_table = np.full(self.q, -1, dtype=np.int64)
        power, g = [1], self._to_poly(generator)
        for k in range(self.q - 1):
            value = self._from_poly(power)
            exp_table[k] = value
            log_table[value] = k
            power = gf_rem(gf_mul(power, g, self.p, ZZ), list(self.modulus), self.p, ZZ)
        assert (log_table[1:] >= 0).all(), "generator does not generate"
        object.__setattr__(self, "exp_table", exp_table)
        object.__setattr__(self, "log_table", log_table)

    @property
    def q(self) -> int:
        return self.p ** self.e

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, e={self.e})"

    # conversions to and from sympy's dense polynomials (highest degree first)

    def _to_poly(self, a: int) -> List[int]:
        coefficients = [int(d) for d in self.digits[a][::-1]]
        while coefficients and coefficients[0] == 0:
            coefficients.pop(0)
        return coefficients

    def _from_poly(self, poly: List[int]) -> int:
        value = 0
        for c in poly:
            value = value * self.p + int(c)
        return value

    def _find_generator(self) -> int:
        exponents = [(self.q - 1) // ell for ell in prime_factors(self.q - 1)]
        modulus = list(self.modulus)
        for candidate in range(2, self.q):
            poly = self._to_poly(candidate)
            if all(gf_pow_mod(poly, k, modulus, self.p, ZZ) != [1] for k in exponents):
                return candidate
        raise AssertionError(f"no generator found for F_{self.q}")

    # arithmetic

    def from_int(self, n: Elements) -> Elements:
        """The image of the integer `n` in the prime field."""
        return np.asarray(n) % self.p if isinstance(n, np.ndarray) else n % self.p

    def _encode(self, digits: np.ndarray) -> Elements:
        value = digits @ (self.p ** np.arange(self.e, dtype=np.int64))
        return value if isinstance(value, np.ndarray) and value.ndim else int(value)

    def add(self, a: Elements, b: Elements) -> Elements:
        return self._encode((self.digits[a] + self.digits[b]) % self.p)

    def neg(self, a: Elements) -> Elements:
        return self._encode((-self.digits[a]) % self.p)

    def sub(self, a: Elements, b: Elements) -> Elements:
        return self.add(a, self.neg(b))

    def mul(self, a: Elements, b: Elements) -> Elements:
        a, b = np.asarray(a), np.asarray(b)
        la, lb = self.log_table[a], self.log_table[b]
        product = np.where((la < 0) | (lb < 0), 0, self.exp_table[(la + lb) % (self.q - 1)])
        return product if product.ndim else int(product)

    def power(self, a: Elements, k: int) -> Elements:
        """``a**k``; negative `k` needs nonzero `a`."""
        a = np.asarray(a)
        la = self.log_table[a]
        if k < 0 and (la < 0).any():
            raise ZeroDivisor("Zero has no negative powers.")
        if k == 0:
            result = np.ones_like(a)
        else:
            result = np.where(la < 0, 0, self.exp_table[(la * (k % (self.q - 1))) % (self.q - 1)])
        return result if result.ndim else int(result)

    def inverse(self, a: Elements) -> Elements:
        return self.power(a, -1)

    def frobenius(self, a: Elements, base: Optional[int] = None) -> Elements:
        """``a**base``, with `base` a power of p (default p)."""
        return self.power(a, self.p if base is None else base)

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        k = int(self.log_table[a])
        if k < 0:
            raise ZeroDivisor("Zero has no multiplicative order.")
        return (self.q - 1) // int(np.gcd(k, self.q - 1))

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    def roots_of_unity(self, m: int) -> np.ndarray:
        """All x with ``x**m == 1``, in increasing order."""
        if (self.q - 1) % m:
            raise ValueError(f"F_{self.q} does not contain all {m}-th roots of unity.")
        step = (self.q - 1) // m
        return np.sort(self.exp_table[np.arange(0, self.q - 1, step)])


@functools.lru_cache(maxsize=None)
def finite_field(p: int, e: int = 1) -> FiniteField:
    """Cached constructor; tables are built once per field."""
    return FiniteField(p, e)


def field_of_order(q: int) -> FiniteField:
    """F_q for an odd prime power `q`.

    Raises:
        ValueError: if `q` is not a power of an odd prime.
    """
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise ValueError(f"`{q}` is not a prime power.")
    ((p, e),) = factors.items()
    return finite_field(int(p), int(e))
