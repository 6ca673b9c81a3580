"""Exact multivariate Laurent polynomials and rational functions over the rationals.

Values are thin immutable wrappers around elements of sympy's sparse fraction
fields ``QQ(x_1, ..., x_k)`` in graded-lexicographic order. Every value is kept
in a canonical form: numerator and denominator are coprime and the
denominator is monic (leading coefficient 1 under grlex). A value whose
denominator is a monomial is a ``LaurentPoly``; arithmetic always returns the
most specific class.

Variables are unified by name. Mixing values over different variable lists
works in the union of the lists, in order of first appearance.
"""
import dataclasses
import functools
import math
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement

from charstack.common import DivisionNotExact, OddPowersRemain, ZeroDivisor

Number = Union[int, Fraction]
Exponents = Tuple[int, ...]


@functools.lru_cache(maxsize=None)
def _field(variables: Tuple[str, ...]) -> FracField:
    assert variables, "a fraction field needs at least one variable"
    return FracField(variables, QQ, grlex)


def _to_qq(value: Number):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _to_fraction(coefficient) -> Fraction:
    return Fraction(int(coefficient.numerator), int(coefficient.denominator))


def _normalized(field: FracField, numer: PolyElement, denom: PolyElement) -> FracElement:
    """Scale a reduced fraction so that its denominator is monic."""
    if not denom:
        raise ZeroDivisor("Denominator of a rational function is zero.")
    lc = denom.LC
    if lc != field.domain.one:
        numer, denom = numer.quo_ground(lc), denom.quo_ground(lc)
    return field.raw_new(numer, denom)


def _wrap(variables: Tuple[str, ...], element: FracElement) -> "RationalFunction":
    cls = LaurentPoly if len(element.denom) == 1 else RationalFunction
    return cls(variables, element)


def _reduce(variables: Tuple[str, ...], numer: PolyElement, denom: PolyElement) -> "RationalFunction":
    field = _field(variables)
    if not denom:
        raise ZeroDivisor("Division by zero.")
    element = field.new(numer, denom)
    return _wrap(variables, _normalized(field, element.numer, element.denom))


def _merge_variables(*lists: Sequence[str]) -> Tuple[str, ...]:
    merged = []
    for names in lists:
        for name in names:
            if name not in merged:
                merged.append(name)
    return tuple(merged)


@dataclasses.dataclass(frozen=True, eq=False)
class RationalFunction:
    """A normalized fraction of multivariate polynomials with rational coefficients.

    Users build values with ``symbols`` and ordinary arithmetic rather than
    instantiating this class directly.
    """

    variables: Tuple[str, ...]
    element: FracElement

    def __post_init__(self):
        assert len(self.variables) == self.element.field.ngens, "variables must match the fraction field"

    # construction

    @classmethod
    def constant(cls, value: Number, variables: Sequence[str]) -> "RationalFunction":
        field = _field(tuple(variables))
        return _wrap(field_variables(field), field.raw_new(field.ring.ground_new(_to_qq(value)), field.ring.one))

    def _embed(self, variables: Tuple[str, ...]) -> FracElement:
        if variables == self.variables:
            return self.element
        field = _field(variables)
        numer = self.element.numer.set_ring(field.ring)
        denom = self.element.denom.set_ring(field.ring)
        return _normalized(field, numer, denom)

    def _coerce(self, other) -> Optional[Tuple[Tuple[str, ...], FracElement, FracElement]]:
        if isinstance(other, RationalFunction):
            variables = _merge_variables(self.variables, other.variables)
            return variables, self._embed(variables), other._embed(variables)
        if isinstance(other, (int, Fraction)):
            field = _field(self.variables)
            return self.variables, self.element, field.raw_new(field.ring.ground_new(_to_qq(other)), field.ring.one)
        return None

    # arithmetic

    def __add__(self, other):
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        variables, a, b = coerced
        result = a + b
        return _wrap(variables, _normalized(result.field, result.numer, result.denom))

    __radd__ = __add__

    def __neg__(self):
        return _wrap(self.variables, self.element.raw_new(-self.element.numer, self.element.denom))

    def __sub__(self, other):
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        variables, a, b = coerced
        result = a - b
        return _wrap(variables, _normalized(result.field, result.numer, result.denom))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        variables, a, b = coerced
        result = a * b
        return _wrap(variables, _normalized(result.field, result.numer, result.denom))

    __rmul__ = __mul__

    def __truediv__(self, other):
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        variables, a, b = coerced
        if not b.numer:
            raise ZeroDivisor(f"Division of `{self}` by zero.")
        return _reduce(variables, a.numer * b.denom, a.denom * b.numer)

    def __rtruediv__(self, other):
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        variables, a, b = coerced
        if not a.numer:
            raise ZeroDivisor(f"Division of `{other}` by zero.")
        return _reduce(variables, b.numer * a.denom, b.denom * a.numer)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1 / self) ** (-n)
        numer, denom = self.element.numer ** n, self.element.denom ** n
        return _wrap(self.variables, self.element.raw_new(numer, denom))

    def __eq__(self, other) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        _, a, b = coerced
        return a.numer == b.numer and a.denom == b.denom

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        numer = _named_terms(self.variables, self.element.numer)
        return hash((numer, _named_terms(self.variables, self.element.denom)))

    def __bool__(self) -> bool:
        return bool(self.element.numer)

    # inspection

    @property
    def numerator(self) -> "LaurentPoly":
        field = _field(self.variables)
        return LaurentPoly(self.variables, field.raw_new(self.element.numer, field.ring.one))

    @property
    def denominator(self) -> "LaurentPoly":
        field = _field(self.variables)
        return LaurentPoly(self.variables, field.raw_new(self.element.denom, field.ring.one))

    @property
    def is_zero(self) -> bool:
        return not self.element.numer

    @property
    def is_constant(self) -> bool:
        return self.element.numer.is_ground and self.element.denom.is_ground

    @property
    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"`{self}` is not a constant.")
        return _to_fraction(self.element.numer.LC if self.element.numer else QQ(0)) / _to_fraction(
            self.element.denom.LC
        )

    @property
    def used_variables(self) -> Tuple[str, ...]:
        """Variables that occur with a nonzero exponent, in declaration order."""
        used = set()
        for poly in (self.element.numer, self.element.denom):
            for monom in poly.itermonoms():
                used.update(i for i, e in enumerate(monom) if e)
        return tuple(name for i, name in enumerate(self.variables) if i in used)

    def exponents_of(self, variable: str) -> Iterable[int]:
        """Every exponent of `variable` in the numerator and the denominator."""
        if variable not in self.variables:
            return
        i = self.variables.index(variable)
        for poly in (self.element.numer, self.element.denom):
            for monom in poly.itermonoms():
                yield monom[i]

    # transformations

    def adams(self, n: int, variables: Optional[Iterable[str]] = None) -> "RationalFunction":
        """Raise each of `variables` (default: all) to its `n`-th power."""
        assert n >= 1, n
        if n == 1:
            return self
        scaled = self.variables if variables is None else tuple(variables)
        mask = tuple(n if name in scaled else 1 for name in self.variables)
        field = _field(self.variables)

        def scale(poly: PolyElement) -> PolyElement:
            return field.ring.from_dict({tuple(e * m for e, m in zip(monom, mask)): c for monom, c in poly.items()})

        return _wrap(self.variables, _normalized(field, scale(self.element.numer), scale(self.element.denom)))

    def substitute(self, mapping: Mapping[str, Union["RationalFunction", Number]]) -> "RationalFunction":
        """Substitute values for variables.

        Images may be Laurent polynomials, rational functions or numbers. The
        result lives over the untouched variables of `self` followed by the
        variables of the images.
        """
        images = {name: value for name, value in mapping.items() if name in self.variables}
        if not images:
            return self
        image_variables = [v.variables for v in images.values() if isinstance(v, RationalFunction)]
        variables = _merge_variables(self.variables, *image_variables)
        field = _field(variables)
        ring = field.ring

        pairs = {}
        for name, value in images.items():
            if isinstance(value, RationalFunction):
                embedded = value._embed(variables)
                pairs[name] = (embedded.numer, embedded.denom)
            else:
                pairs[name] = (ring.ground_new(_to_qq(value)), ring.one)
        gens = dict(zip(self.variables, ring.gens))

        def degrees(poly: PolyElement) -> Dict[str, int]:
            return {name: max((m[self.variables.index(name)] for m in poly.itermonoms()), default=0) for name in pairs}

        def homogenized(poly: PolyElement, degs: Dict[str, int]) -> PolyElement:
            powers: Dict[Tuple[str, int, int], PolyElement] = {}

            def power(name: str, which: int, e: int) -> PolyElement:
                key = (name, which, e)
                if key not in powers:
                    powers[key] = pairs[name][which] ** e
                return powers[key]

            total = ring.zero
            for monom, coefficient in poly.items():
                term = ring.ground_new(coefficient)
                for name, e in zip(self.variables, monom):
                    if name in pairs:
                        term = term * power(name, 0, e) * power(name, 1, degs[name] - e)
                    elif e:
                        term = term * gens[name] ** e
                total += term
            return total

        numer, denom = self.element.numer, self.element.denom
        numer_degs, denom_degs = degrees(numer), degrees(denom)
        top = homogenized(numer, numer_degs)
        bottom = homogenized(denom, denom_degs)
        for name, (_, b) in pairs.items():
            top *= b ** denom_degs[name]
            bottom *= b ** numer_degs[name]
        if not bottom:
            raise ZeroDivisor(f"Substitution {dict(mapping)} makes the denominator of `{self}` vanish.")
        return _reduce(variables, top, bottom)._compact()

    def evaluate(self, **values: Number) -> Fraction:
        """Evaluate at numbers, e.g. ``f.evaluate(q=3)``."""
        result = self.substitute(values)
        return result.constant_value

    def _compact(self) -> "RationalFunction":
        used = self.used_variables or self.variables[:1]
        if used == self.variables:
            return self
        return _wrap(used, self._embed(used))

    def rename(self, old: str, new: str) -> "RationalFunction":
        if old not in self.variables:
            return self
        if new in self.variables:
            raise ValueError(f"Cannot rename `{old}` to `{new}`: `{new}` is already a variable.")
        variables = tuple(new if name == old else name for name in self.variables)
        field = _field(variables)
        numer = field.ring.from_dict(dict(self.element.numer.items()))
        denom = field.ring.from_dict(dict(self.element.denom.items()))
        return _wrap(variables, _normalized(field, numer, denom))

    def as_expr(self) -> sympy.Expr:
        return self.element.as_expr()

    # rendering

    def __str__(self) -> str:
        numer, denom = _integral_pair(self.element.numer, self.element.denom)
        top = _render_poly(self.variables, numer)
        if denom == {self.element.field.ring.zero_monom: 1}:
            return top
        bottom = _render_poly(self.variables, denom)
        if len(numer) > 1:
            top = f"({top})"
        if len(denom) > 1 or not _is_monic_monomial(denom):
            bottom = f"({bottom})"
        return f"{top}/{bottom}"

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self}>"


class LaurentPoly(RationalFunction):
    """A Laurent polynomial: a rational function whose denominator is a monomial."""

    def __post_init__(self):
        super().__post_init__()
        assert len(self.element.denom) == 1, "denominator of a Laurent polynomial must be a monomial"

    def __str__(self) -> str:
        return render_terms(self.variables, self.terms)

    @classmethod
    def from_terms(cls, variables: Sequence[str], terms: Mapping[Exponents, Number]) -> "LaurentPoly":
        variables = tuple(variables)
        field = _field(variables)
        terms = {tuple(e): Fraction(c) for e, c in terms.items() if c}
        for exponents in terms:
            if len(exponents) != len(variables):
                raise ValueError(f"Exponent vector `{exponents}` does not match variables `{variables}`.")
        if not terms:
            return cls(variables, field.zero)
        shift = tuple(min(0, min(e[i] for e in terms)) for i in range(len(variables)))
        numer = field.ring.from_dict(
            {tuple(a - s for a, s in zip(e, shift)): _to_qq(c) for e, c in terms.items()}
        )
        denom = field.ring.from_dict({tuple(-s for s in shift): QQ(1)})
        return cls(variables, field.raw_new(numer, denom))

    @property
    def terms(self) -> Dict[Exponents, Fraction]:
        """Map from exponent vectors (negative entries allowed) to nonzero coefficients."""
        (shift,) = self.element.denom.itermonoms()
        return {
            tuple(a - s for a, s in zip(monom, shift)): _to_fraction(c) for monom, c in self.element.numer.items()
        }

    def coefficient(self, *exponents: int) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def degree(self, variable: str) -> int:
        i = self.variables.index(variable)
        return max(e[i] for e in self.terms)

    @property
    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    @property
    def leading_coefficient(self) -> Fraction:
        """Coefficient of the grlex-largest term."""
        terms = self.terms
        return terms[max(terms, key=lambda e: (sum(e), e))]


def field_variables(field: FracField) -> Tuple[str, ...]:
    return tuple(str(s) for s in field.symbols)


def symbols(names: str) -> Tuple[LaurentPoly, ...]:
    """Generators of the Laurent polynomial ring in `names` ("q" or "z w")."""
    variables = tuple(names.replace(",", " ").split())
    field = _field(variables)
    return tuple(LaurentPoly(variables, field.raw_new(gen, field.ring.one)) for gen in field.ring.gens)


def constant(value: Number, variables: Sequence[str] = ("q",)) -> LaurentPoly:
    result = RationalFunction.constant(value, variables)
    assert isinstance(result, LaurentPoly)
    return result


def poly_arith(op: str, a: LaurentPoly, b: Optional[LaurentPoly] = None) -> LaurentPoly:
    """Arithmetic on Laurent polynomials by name: ``add``, ``mul``, ``neg`` or ``exact_div``."""
    if op == "neg":
        return -a
    if b is None:
        raise ValueError(f"Operation `{op}` needs two operands.")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "exact_div":
        return exact_div(a, b)
    raise ValueError(f"Unknown operation `{op}`.")


def exact_div(a: RationalFunction, b: RationalFunction) -> LaurentPoly:
    quotient = a / b
    if not isinstance(quotient, LaurentPoly):
        raise DivisionNotExact(f"`{b}` does not divide `{a}`.")
    return quotient


def rf_arith(op: str, a: RationalFunction, b: RationalFunction) -> RationalFunction:
    """Arithmetic on rational functions by name: ``add``, ``mul`` or ``div``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"Unknown operation `{op}`.")


def _strip_monomial(poly: PolyElement) -> PolyElement:
    monoms = list(poly.itermonoms())
    low = tuple(min(m[i] for m in monoms) for i in range(poly.ring.ngens))
    if not any(low):
        return poly
    return poly.ring.from_dict({tuple(a - b for a, b in zip(m, low)): c for m, c in poly.items()})


def _primitive_integral(poly: PolyElement) -> PolyElement:
    """Scale to integer coefficients with content 1 and positive leading coefficient."""
    _, poly = poly.clear_denoms()
    content = math.gcd(*(int(c.numerator) for c in poly.coeffs()))
    if poly.LC < 0:
        content = -content
    return poly.quo_ground(poly.ring.domain(content))


def multivar_gcd(a: RationalFunction, b: RationalFunction) -> LaurentPoly:
    """Greatest common divisor of two Laurent polynomials.

    Monomials are units, so monomial content is stripped first. The result is
    a primitive integer polynomial with positive grlex leading coefficient.
    """
    if not isinstance(a, LaurentPoly) or not isinstance(b, LaurentPoly):
        raise TypeError("`multivar_gcd` expects Laurent polynomials.")
    if a.is_zero and b.is_zero:
        raise ValueError("`multivar_gcd` of two zeros is undefined.")
    variables = _merge_variables(a.variables, b.variables)
    field = _field(variables)
    p, q = a._embed(variables).numer, b._embed(variables).numer
    if not p:
        g = _strip_monomial(q)
    elif not q:
        g = _strip_monomial(p)
    else:
        g = _strip_monomial(p).gcd(_strip_monomial(q))
    g = _primitive_integral(g)
    result = LaurentPoly(variables, field.raw_new(g, field.ring.one))
    return result


def as_function_of_square(f: RationalFunction, root: str = "u", square: str = "q") -> RationalFunction:
    """Rewrite `f`, a function of ``root``, as a function of ``square = root**2``.

    Raises:
        OddPowersRemain: if an odd power of `root` survives.
    """
    if root not in f.variables:
        return f
    if any(e % 2 for e in f.exponents_of(root)):
        raise OddPowersRemain(f"`{f}` is not a function of `{square}` = `{root}`^2.")
    i = f.variables.index(root)
    field = _field(f.variables)

    def halve(poly: PolyElement) -> PolyElement:
        return field.ring.from_dict(
            {tuple(e // 2 if j == i else e for j, e in enumerate(monom)): c for monom, c in poly.items()}
        )

    halved = _wrap(f.variables, _normalized(field, halve(f.element.numer), halve(f.element.denom)))
    return halved.rename(root, square)._compact()


def substitute(f, mapping: Mapping[str, Union[RationalFunction, Number]]):
    """Substitute into a value or, coefficient-wise, into a series."""
    return f.substitute(mapping)


def _named_terms(variables: Tuple[str, ...], poly: PolyElement) -> Tuple:
    named = []
    for monom, c in poly.items():
        key = tuple(sorted((name, e) for name, e in zip(variables, monom) if e))
        named.append((key, _to_fraction(c)))
    return tuple(sorted(named))


def _integral_pair(numer: PolyElement, denom: PolyElement) -> Tuple[Dict[Exponents, int], Dict[Exponents, int]]:
    """Scale a fraction so both sides have integer coefficients with joint content 1."""
    pairs = [(m, _to_fraction(c)) for m, c in numer.items()], [(m, _to_fraction(c)) for m, c in denom.items()]
    scale = math.lcm(*(c.denominator for side in pairs for _, c in side))
    top = {m: int(c * scale) for m, c in pairs[0]}
    bottom = {m: int(c * scale) for m, c in pairs[1]}
    content = math.gcd(*top.values(), *bottom.values())
    return {m: c // content for m, c in top.items()}, {m: c // content for m, c in bottom.items()}


def _is_monic_monomial(poly: Dict[Exponents, int]) -> bool:
    return len(poly) == 1 and next(iter(poly.values())) == 1


def _grlex_key(exponents: Exponents) -> Tuple[int, Exponents]:
    return sum(exponents), exponents


def _render_monomial(variables: Tuple[str, ...], exponents: Exponents) -> str:
    factors = []
    for name, e in zip(variables, exponents):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def render_terms(variables: Tuple[str, ...], terms: Mapping[Exponents, Fraction]) -> str:
    """Canonical text form: grlex-descending monomials with explicit signs.

    >>> render_terms(("q",), {(4,): 3, (3,): -2, (0,): 2})
    '3*q^4 - 2*q^3 + 2'
    """
    if not terms:
        return "0"
    parts = []
    for exponents in sorted(terms, key=_grlex_key, reverse=True):
        c = Fraction(terms[exponents])
        monomial = _render_monomial(variables, exponents)
        magnitude = abs(c)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{magnitude}*{monomial}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)


def _render_poly(variables: Tuple[str, ...], poly: Mapping[Exponents, int]) -> str:
    return render_terms(variables, {m: Fraction(c) for m, c in poly.items()})


def render(value) -> str:
    """Canonical text for algebra values, numbers and anything with ``__str__``."""
    if isinstance(value, LaurentPoly):
        return render_terms(value.variables, value.terms)
    return str(value)
