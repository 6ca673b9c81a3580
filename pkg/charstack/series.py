"""Truncated graded series with coefficients in a declared domain.

A series stores its coefficients for degrees ``0..cutoff``. Coefficients
belong to an ``AdamsDomain``: the domain knows its zero and one, how to
invert a unit, and how the Adams operations act on a coefficient. Mixing two
series keeps the smaller cutoff.
"""
import abc
import dataclasses
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence, Tuple

from charstack.algebra import LaurentPoly, RationalFunction, constant, render
from charstack.common import DEFAULT_CUTOFF, ExpOfNonzeroConstant, InverseOfNonUnit, LogOfNonUnit


class AdamsDomain(abc.ABC):
    """Coefficient domain of a series together with its Adams operations."""

    @abc.abstractmethod
    def zero(self) -> Any:
        ...

    @abc.abstractmethod
    def one(self) -> Any:
        ...

    @abc.abstractmethod
    def adams(self, c: Any, n: int) -> Any:
        """The `n`-th Adams operation applied to the coefficient `c`."""

    @abc.abstractmethod
    def invert(self, c: Any) -> Any:
        ...

    def is_zero(self, c: Any) -> bool:
        return c == 0

    def is_one(self, c: Any) -> bool:
        return c == 1

    def coerce(self, c: Any) -> Any:
        if isinstance(c, (int, Fraction)):
            return self.one() * c
        return c


@dataclasses.dataclass(frozen=True)
class RationalDomain(AdamsDomain):
    """Rational functions in `variables`; ψ_n raises every variable to the n-th power."""

    variables: Tuple[str, ...] = ("q",)

    def zero(self) -> LaurentPoly:
        return constant(0, self.variables)

    def one(self) -> LaurentPoly:
        return constant(1, self.variables)

    def adams(self, c: RationalFunction, n: int) -> RationalFunction:
        if isinstance(c, (int, Fraction)):
            return self.coerce(c)
        return c.adams(n, self.variables)

    def invert(self, c: RationalFunction) -> RationalFunction:
        if self.is_zero(c):
            raise InverseOfNonUnit("Constant term of the series is zero.")
        return 1 / c


@dataclasses.dataclass(frozen=True)
class TruncatedSeries:
    """A series ``Σ c_d T^d`` known for degrees ``0..cutoff``."""

    domain: AdamsDomain
    coefficients: Tuple[Any, ...]
    variable: str = "T"

    def __post_init__(self):
        assert self.coefficients, "a series keeps at least its constant term"

    @classmethod
    def from_coefficients(
        cls, domain: AdamsDomain, coefficients: Iterable[Any], cutoff: int = DEFAULT_CUTOFF, variable: str = "T"
    ) -> "TruncatedSeries":
        """Build a series from leading coefficients, padding with zeros up to `cutoff`."""
        if cutoff < 0:
            raise ValueError(f"`cutoff` must be non-negative, found `{cutoff}`.")
        coefficients = [domain.coerce(c) for c in coefficients][: cutoff + 1]
        coefficients += [domain.zero()] * (cutoff + 1 - len(coefficients))
        return cls(domain, tuple(coefficients), variable)

    @classmethod
    def one(cls, domain: AdamsDomain, cutoff: int = DEFAULT_CUTOFF, variable: str = "T") -> "TruncatedSeries":
        return cls.from_coefficients(domain, [domain.one()], cutoff, variable)

    @classmethod
    def monomial(
        cls, domain: AdamsDomain, c: Any, degree: int, cutoff: int = DEFAULT_CUTOFF, variable: str = "T"
    ) -> "TruncatedSeries":
        return cls.from_coefficients(domain, [domain.zero()] * degree + [c], cutoff, variable)

    @property
    def cutoff(self) -> int:
        return len(self.coefficients) - 1

    def coeff(self, d: int) -> Any:
        if d < 0:
            return self.domain.zero()
        if d > self.cutoff:
            raise IndexError(f"Degree `{d}` is beyond the cutoff `{self.cutoff}`.")
        return self.coefficients[d]

    def truncate(self, cutoff: int) -> "TruncatedSeries":
        cutoff = min(cutoff, self.cutoff)
        return TruncatedSeries.from_coefficients(self.domain, self.coefficients, cutoff, self.variable)

    def _with(self, coefficients: Sequence[Any]) -> "TruncatedSeries":
        return TruncatedSeries(self.domain, tuple(coefficients), self.variable)

    def _pair(self, other: "TruncatedSeries") -> int:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"Cannot combine a series with `{type(other).__name__}`.")
        return min(self.cutoff, other.cutoff)

    # ring operations

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._pair(other)
        return self._with([self.coefficients[d] + other.coefficients[d] for d in range(n + 1)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._pair(other)
        return self._with([self.coefficients[d] - other.coefficients[d] for d in range(n + 1)])

    def __neg__(self) -> "TruncatedSeries":
        return self._with([-c for c in self.coefficients])

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        n = self._pair(other)
        a, b = self.coefficients, other.coefficients
        product = []
        for d in range(n + 1):
            total = self.domain.zero()
            for i in range(d + 1):
                if self.domain.is_zero(a[i]) or self.domain.is_zero(b[d - i]):
                    continue
                total = total + a[i] * b[d - i]
            product.append(total)
        return self._with(product)

    def __rmul__(self, other) -> "TruncatedSeries":
        return self.scale(other)

    def scale(self, c: Any) -> "TruncatedSeries":
        return self._with([c * x for x in self.coefficients])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = self._pair(other)
        return all(self.coefficients[d] == other.coefficients[d] for d in range(n + 1))

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def first_difference(self, other: "TruncatedSeries") -> Any:
        """Lowest degree where the two series differ, or None."""
        n = self._pair(other)
        for d in range(n + 1):
            if self.coefficients[d] != other.coefficients[d]:
                return d
        return None

    # analytic operations

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coefficients[0]
        inv0 = self.domain.invert(c0)
        result = [inv0]
        for d in range(1, self.cutoff + 1):
            total = self.domain.zero()
            for k in range(1, d + 1):
                if not self.domain.is_zero(self.coefficients[k]):
                    total = total + self.coefficients[k] * result[d - k]
            result.append(-(inv0 * total))
        return self._with(result)

    def log(self) -> "TruncatedSeries":
        """Ordinary logarithm; the constant term must be exactly 1."""
        if not self.domain.is_one(self.coefficients[0]):
            raise LogOfNonUnit(f"Constant term of the series is `{render(self.coefficients[0])}`, not 1.")
        f = self.coefficients
        logs = [self.domain.zero()]
        for n in range(1, self.cutoff + 1):
            total = f[n] * n
            for k in range(1, n):
                if not self.domain.is_zero(f[n - k]) and not self.domain.is_zero(logs[k]):
                    total = total - logs[k] * f[n - k] * k
            logs.append(total * Fraction(1, n))
        return self._with(logs)

    def exp(self) -> "TruncatedSeries":
        """Ordinary exponential; the constant term must be 0."""
        if not self.domain.is_zero(self.coefficients[0]):
            raise ExpOfNonzeroConstant(f"Constant term of the series is `{render(self.coefficients[0])}`, not 0.")
        g = self.coefficients
        exps = [self.domain.one()]
        for n in range(1, self.cutoff + 1):
            total = self.domain.zero()
            for k in range(1, n + 1):
                if not self.domain.is_zero(g[k]):
                    total = total + g[k] * exps[n - k] * k
            exps.append(total * Fraction(1, n))
        return self._with(exps)

    def power(self, c: Any) -> "TruncatedSeries":
        """The binomial power ``exp(c * log(self))`` for a coefficient-valued exponent `c`."""
        return self.log().scale(c).exp()

    def stretch(self, k: int) -> "TruncatedSeries":
        """Substitute ``T -> T^k`` without touching coefficients."""
        assert k >= 1, k
        result = [self.domain.zero()] * (self.cutoff + 1)
        for d, c in enumerate(self.coefficients):
            if d * k > self.cutoff:
                break
            result[d * k] = c
        return self._with(result)

    def map_coefficients(self, func: Callable[[Any], Any], domain: AdamsDomain = None) -> "TruncatedSeries":
        return TruncatedSeries(domain or self.domain, tuple(func(c) for c in self.coefficients), self.variable)

    def substitute(self, mapping) -> "TruncatedSeries":
        """Substitute into every coefficient."""
        return self.map_coefficients(lambda c: c.substitute(mapping) if isinstance(c, RationalFunction) else c)

    def sign_flip(self) -> "TruncatedSeries":
        """Substitute ``T -> -T``."""
        return self._with([c if d % 2 == 0 else -c for d, c in enumerate(self.coefficients)])

    def __str__(self) -> str:
        parts = []
        for d, c in enumerate(self.coefficients):
            if self.domain.is_zero(c):
                continue
            text = render(c)
            if d == 0:
                parts.append(text)
                continue
            monomial = self.variable if d == 1 else f"{self.variable}^{d}"
            if text == "1":
                body = monomial
            elif text == "-1":
                body = f"-{monomial}"
            elif " " in text or "/" in text:
                body = f"({text})*{monomial}"
            else:
                body = f"{text}*{monomial}"
            parts.append(body)
        body = " + ".join(parts) if parts else "0"
        return body.replace("+ -", "- ") + f" + O({self.variable}^{self.cutoff + 1})"


def series_arith(op: str, f: TruncatedSeries, g: TruncatedSeries = None, d: int = None):
    """Series operations by name: ``add``, ``mul``, ``inverse``, ``log``, ``exp`` or ``coeff``."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "inverse":
        return f.inverse()
    if op == "log":
        return f.log()
    if op == "exp":
        return f.exp()
    if op == "coeff":
        return f.coeff(d)
    raise ValueError(f"Unknown series operation `{op}`.")
