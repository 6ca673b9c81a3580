"""Counting on non-orientable surfaces without punctures.

The stack of tuples ``(A_1, ..., A_r)`` in GL_n with ``A_1^2 ... A_r^2 = 1``
is counted through the generating function

    M_ρ(q, T) = Exp(Σ_n W_{ρ,n}(q) T^n),   ρ = r - 2,

whose ingredients are the hook-length series Z_ρ and its plethystic Log.
The same series also comes out of a product over Γ-orbits of the
multiplicative group; both routes are implemented and compared, together
with the q-series identities for involution counts.
"""
import dataclasses
import functools
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from charstack.algebra import LaurentPoly, RationalFunction, constant, symbols
from charstack.common import (
    DEFAULT_CUTOFF,
    IntegralityViolation,
    RangeError,
    divisors,
    mobius,
    prime_factors,
    two_adic_valuation,
)
from charstack.partitions import hook_polynomial, partitions_of
from charstack.plethysm import adams, pleth_exp, pleth_log
from charstack.report import CheckResult, Report
from charstack.series import RationalDomain, TruncatedSeries

Index = Union[int, Fraction]

Q = RationalDomain(("q",))
QXY = RationalDomain(("q", "X", "Y"))

# smallest degree to which the cached Log tables and M series are computed
TABLE_DEGREE = 6


def _q() -> LaurentPoly:
    (q,) = symbols("q")
    return q


def _binomial2(n: int) -> int:
    return n * (n - 1) // 2


# q-analogues


@functools.lru_cache(maxsize=None)
def q_pochhammer(n: int) -> LaurentPoly:
    """(q)_n = (1 - q)(1 - q^2)...(1 - q^n)."""
    q = _q()
    result = constant(1)
    for i in range(1, n + 1):
        result = result * (1 - q ** i)
    return result


@functools.lru_cache(maxsize=None)
def q_binomial(n: int, r: int) -> LaurentPoly:
    """The Gaussian binomial coefficient ``(q)_n / ((q)_r (q)_{n-r})``.

    Raises:
        RangeError: unless ``0 <= r <= n``.
    """
    if not 0 <= r <= n:
        raise RangeError(f"q-binomial needs 0 <= r <= n, found n=`{n}`, r=`{r}`.")
    result = q_pochhammer(n) / (q_pochhammer(r) * q_pochhammer(n - r))
    assert isinstance(result, LaurentPoly), "q-binomial coefficients are polynomials"
    return result


@functools.lru_cache(maxsize=None)
def involution_count(n: int) -> LaurentPoly:
    """I_n(q), the number of x in GL_n(F_q) with x^2 = 1: Σ_r q^(r(n-r)) [n r]."""
    if n < 0:
        raise RangeError(f"Matrix size must be non-negative, found `{n}`.")
    q = _q()
    result = constant(0)
    for r in range(n + 1):
        result = result + q ** (r * (n - r)) * q_binomial(n, r)
    return result


@functools.lru_cache(maxsize=None)
def gl_order(n: int) -> LaurentPoly:
    """|GL_n(F_q)| = Π_{i<n} (q^n - q^i)."""
    q = _q()
    result = constant(1)
    for i in range(n):
        result = result * (q ** n - q ** i)
    return result


def i_series(cutoff: int = DEFAULT_CUTOFF) -> TruncatedSeries:
    """I(q,T) = Σ I_n(q)/(q)_n T^n."""
    return TruncatedSeries.from_coefficients(
        Q, [involution_count(n) / q_pochhammer(n) for n in range(cutoff + 1)], cutoff
    )


def i_star_series(cutoff: int = DEFAULT_CUTOFF) -> TruncatedSeries:
    """I*(q,X,Y) = Σ_{r,s} q^(rs) X^r Y^s / ((q)_r (q)_s), graded by total degree r + s."""
    q, x, y = symbols("q X Y")
    coefficients = []
    for d in range(cutoff + 1):
        total = constant(0, QXY.variables)
        for r in range(d + 1):
            s = d - r
            total = total + q ** (r * s) * x ** r * y ** s / (q_pochhammer(r) * q_pochhammer(s))
        coefficients.append(total)
    return TruncatedSeries.from_coefficients(QXY, coefficients, cutoff)


def euler_series(cutoff: int = DEFAULT_CUTOFF, variable: str = "X", inverse: bool = False) -> TruncatedSeries:
    """E(q,u) = Σ u^n/(q)_n = Π_n (1 - q^n u)^(-1), or its inverse Σ (-1)^n q^C(n,2) u^n/(q)_n.

    The degree of ``u`` is 1 for a single variable and 2 for ``"XY"``.
    """
    q, x, y = symbols("q X Y")
    u = {"X": x, "Y": y, "XY": x * y}[variable]
    step = 2 if variable == "XY" else 1
    coefficients = [constant(0, QXY.variables)] * (cutoff + 1)
    for n in range(cutoff // step + 1):
        sign = (-1) ** n * q ** _binomial2(n) if inverse else 1
        coefficients[n * step] = sign * u ** n / q_pochhammer(n)
    return TruncatedSeries.from_coefficients(QXY, coefficients, cutoff)


# the hook-length series and its Log


@functools.lru_cache(maxsize=None)
def z_series(rho: int, cutoff: int = DEFAULT_CUTOFF) -> TruncatedSeries:
    """Z_ρ(q,T) = Σ_λ (q^(-n(λ)) H_λ(q))^ρ T^|λ|."""
    q = _q()
    coefficients = []
    for d in range(cutoff + 1):
        total = constant(0)
        for lam in partitions_of(d):
            total = total + (q ** (-lam.n) * hook_polynomial(lam)) ** rho
        coefficients.append(total)
    return TruncatedSeries.from_coefficients(Q, coefficients, cutoff)


@functools.lru_cache(maxsize=None)
def _v_table(rho: int, cutoff: int) -> Tuple[RationalFunction, ...]:
    return pleth_log(z_series(rho, cutoff)).coefficients


def _as_index(n: Index) -> Optional[int]:
    """`n` as an integer, or None when it is not one."""
    n = Fraction(n)
    return int(n) if n.denominator == 1 else None


def v_coeffs(rho: int, n: Index) -> RationalFunction:
    """V_{ρ,n}: the n-th coefficient of Log Z_ρ; zero for non-integral `n`."""
    index = _as_index(n)
    if index is None:
        return constant(0)
    if index < 1:
        raise RangeError(f"Log coefficients are indexed from 1, found `{n}`.")
    return _v_table(rho, max(index, TABLE_DEGREE))[index]


def _supported_on(m: int, primes: Sequence[int]) -> bool:
    return all(p in primes for p in prime_factors(m))


def v_coeffs_k(rho: int, n: Index, k: int) -> RationalFunction:
    """V_{ρ,n,k} = Σ (1/m) V_{ρ,n/m}(q^m) over m dividing n whose primes all divide k."""
    index = _as_index(n)
    if index is None:
        return constant(0)
    primes = prime_factors(k)
    total = constant(0)
    for m in divisors(index):
        if _supported_on(m, primes):
            total = total + v_coeffs(rho, index // m).adams(m) * Fraction(1, m)
    return total


def w_coeffs(rho: int, n: int) -> RationalFunction:
    """W_{ρ,n} = 2V_{ρ,n} + (q-2)V_{2ρ,n/2} + (q-1)/2 (V_{ρ,n/2,2}(q^2) - V_{2ρ,n/2,2}(q))."""
    if n < 1:
        raise RangeError(f"W is indexed from 1, found `{n}`.")
    q = _q()
    half = Fraction(n, 2)
    result = 2 * v_coeffs(rho, n) + (q - 2) * v_coeffs(2 * rho, half)
    twisted = v_coeffs_k(rho, half, 2).adams(2) - v_coeffs_k(2 * rho, half, 2)
    return result + (q - 1) * twisted * Fraction(1, 2)


@functools.lru_cache(maxsize=None)
def m_series(rho: int, cutoff: int = DEFAULT_CUTOFF) -> TruncatedSeries:
    """M_ρ(q,T) = Exp(Σ W_{ρ,n} T^n)."""
    w = [constant(0)] + [w_coeffs(rho, n) for n in range(1, cutoff + 1)]
    return pleth_exp(TruncatedSeries.from_coefficients(Q, w, cutoff))


def mcoeff(rho: int, n: int) -> RationalFunction:
    """Coefficient of T^n in M_ρ(q,T)."""
    return m_series(rho, max(n, TABLE_DEGREE)).coeff(n)


def e_count_nonorient(rho: int, n: int) -> RationalFunction:
    """E-series (point count) q^(ρ C(n,2)) mcoeff(ρ,n) of the stack with r = ρ + 2.

    Raises:
        IntegralityViolation: if ρ >= 0 and the count is not a polynomial with integer
            coefficients. This signals a bug.
    """
    q = _q()
    value = q ** (rho * _binomial2(n)) * mcoeff(rho, n)
    if rho >= 0 and not (isinstance(value, LaurentPoly) and value.has_integer_coefficients):
        raise IntegralityViolation(f"Count for rho=`{rho}`, n=`{n}` is `{value}`, expected an integral polynomial.")
    return value


def representation_count_polynomial(rho: int, n: int) -> LaurentPoly:
    """|{(A_1..A_r) : A_1^2...A_r^2 = 1}| over F_q, that is e_count times |GL_n(F_q)|."""
    value = e_count_nonorient(rho, n) * gl_order(n)
    if not (isinstance(value, LaurentPoly) and value.has_integer_coefficients):
        raise IntegralityViolation(f"Representation count for rho=`{rho}`, n=`{n}` is `{value}`.")
    return value


def leading_coefficient_table(rmax: int = 5, nmax: int = 5) -> List[List[int]]:
    """Leading coefficients of the representation counts; row r-1, column n-1."""
    table = []
    for r in range(1, rmax + 1):
        row = []
        for n in range(1, nmax + 1):
            lc = representation_count_polynomial(r - 2, n).leading_coefficient
            assert lc.denominator == 1, lc
            row.append(int(lc))
        table.append(row)
    return table


def parity_pattern(rho_max: int = 3, nmax: int = 5) -> Report:
    """Whether e_count(ρ,n) has only even coefficients for ρ > 0 and odd n. Reported, never fatal."""
    checks = []
    for rho in range(1, rho_max + 1):
        for n in range(1, nmax + 1, 2):
            value = e_count_nonorient(rho, n)
            odd = sorted(e for e, c in value.terms.items() if c.numerator % 2)
            detail = "" if not odd else f"odd coefficients at exponents {[e[0] for e in odd]}"
            checks.append(CheckResult(f"rho={rho},n={n}", not odd, detail, fatal=False))
    return Report("parity", {"rho_max": rho_max, "nmax": nmax}, checks)


# leading coefficients of |U_r(F_q)| for r = 1..5 (rows) and n = 1..5 (columns)
KNOWN_LEADING_COEFFICIENTS = (
    (2, 1, 2, 1, 2),
    (2, 1, 2, 1, 2),
    (2, 3, 2, 2, 2),
    (2, 2, 2, 2, 2),
    (2, 2, 2, 2, 2),
)


def leading_coefficient_check() -> Report:
    table = leading_coefficient_table(len(KNOWN_LEADING_COEFFICIENTS), len(KNOWN_LEADING_COEFFICIENTS[0]))
    checks = []
    for r, (row, known) in enumerate(zip(table, KNOWN_LEADING_COEFFICIENTS), start=1):
        passed = tuple(row) == known
        checks.append(CheckResult(f"r={r}", passed, "" if passed else f"{row} != {list(known)}"))
    return Report("leading_coefficients", {}, checks)


def integrality_check(rhos: Sequence[int] = (0, 1, 2, 3), nmax: int = 6) -> Report:
    """e_count(ρ,n) is a Laurent polynomial with integer coefficients."""
    checks = []
    for rho in rhos:
        for n in range(1, nmax + 1):
            try:
                e_count_nonorient(rho, n)
            except IntegralityViolation as exc:
                checks.append(CheckResult(f"rho={rho},n={n}", False, str(exc)))
            else:
                checks.append(CheckResult(f"rho={rho},n={n}", True))
    return Report("integrality", {"rhos": list(rhos), "nmax": nmax}, checks)


# Γ-orbits and the product formula


@dataclasses.dataclass(frozen=True)
class GammaDatum:
    """Point counts over F_q of a variety with Frobenius F and involution σ.

    Attributes:
        n1: σ-fixed points fixed by F.
        n1_twisted: points outside the σ-fixed locus with F(x) = σ(x).
        n1_sharp: points outside the σ-fixed locus fixed by F.
    """

    n1: RationalFunction
    n1_twisted: RationalFunction
    n1_sharp: RationalFunction

    @classmethod
    def multiplicative_group(cls) -> "GammaDatum":
        """𝔾_m with σ(x) = 1/x: fixed points ±1, twisted points x^(q+1) = 1 with x ≠ ±1."""
        q = _q()
        return cls(constant(2), q - 1, q - 3)


@dataclasses.dataclass(frozen=True)
class OrbitCounts:
    """Numbers of Γ-orbits of each kind, as rational functions of q.

    `fixed[d]` counts orbits of kind (0,d), `twisted[r]` of kind (r,2r),
    `free[d]` of kind (∞,d) and `sharp[d]` the F-orbits of size d off the
    σ-fixed locus.
    """

    bound: int
    fixed: Dict[int, RationalFunction]
    twisted: Dict[int, RationalFunction]
    free: Dict[int, RationalFunction]
    sharp: Dict[int, RationalFunction]

    def as_rows(self) -> List[Tuple[str, int, RationalFunction]]:
        rows = []
        tables = (("(0,d)", self.fixed), ("(r,2r)", self.twisted), ("(inf,d)", self.free), ("#", self.sharp))
        for kind, table in tables:
            rows.extend((kind, d, table[d]) for d in sorted(table))
        return rows


def mobius_orbit_counts(
    n1: Callable[[int], Any],
    n1_twisted: Callable[[int], Any],
    n1_sharp: Callable[[int], Any],
    bound: int,
    zero: Any = 0,
) -> Tuple[Dict[int, Any], Dict[int, Any], Dict[int, Any], Dict[int, Any]]:
    """Orbit counts of each kind from the point counts of the powers F^s.

    `n1(s)` counts σ-fixed points fixed by F^s, `n1_twisted(s)` points off the
    σ-fixed locus with F^s(x) = σ(x) and `n1_sharp(s)` points off the σ-fixed
    locus fixed by F^s. Works for polynomials in q and for plain integers alike.

    Returns:
        The dictionaries ``fixed``, ``twisted``, ``free`` and ``sharp`` indexed by 1..bound.
    """
    if bound < 1:
        raise RangeError(f"Orbit bound must be positive, found `{bound}`.")
    fixed, twisted, sharp, free = {}, {}, {}, {}
    for d in range(1, bound + 1):
        fixed[d] = sum((n1(r) * mobius(d // r) for r in divisors(d)), zero) * Fraction(1, d)
        sharp[d] = sum((n1_sharp(e) * mobius(d // e) for e in divisors(d)), zero) * Fraction(1, d)
        twisted[d] = sum(
            (n1_twisted(s) * mobius(d // s) for s in divisors(d) if (d // s) % 2),
            zero,
        ) * Fraction(1, 2 * d)
    for d in range(1, bound + 1):
        value = sharp[d] * Fraction(1, 2)
        if d % 2 == 0:
            value = value - twisted[d // 2] * Fraction(1, 2)
        free[d] = value
    return fixed, twisted, free, sharp


def orbit_counts(datum: GammaDatum, bound: int) -> OrbitCounts:
    """Expand a datum into orbit counts by Möbius inversion."""
    fixed, twisted, free, sharp = mobius_orbit_counts(
        datum.n1.adams, datum.n1_twisted.adams, datum.n1_sharp.adams, bound, constant(0)
    )
    return OrbitCounts(bound, fixed, twisted, free, sharp)


def gamma_counts_gm(bound: int) -> OrbitCounts:
    return orbit_counts(GammaDatum.multiplicative_group(), bound)


def _orbit_product(
    counts: OrbitCounts, omega0: TruncatedSeries, omega1: TruncatedSeries, omega_inf: TruncatedSeries, cutoff: int
) -> Tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]:
    """F_0, F_1 and F_∞ truncated at `cutoff`."""
    f0 = TruncatedSeries.one(Q, cutoff)
    f1 = TruncatedSeries.one(Q, cutoff)
    f_inf = TruncatedSeries.one(Q, cutoff)
    omega0, omega1, omega_inf = (s.truncate(cutoff) for s in (omega0, omega1, omega_inf))
    for d in range(1, cutoff + 1):
        if counts.fixed[d]:
            f0 = f0 * adams(omega0, d).power(counts.fixed[d])
    for r in range(1, cutoff // 2 + 1):
        if counts.twisted[r]:
            f1 = f1 * adams(omega1, 2 * r).power(counts.twisted[r])
        if counts.free[r]:
            f_inf = f_inf * adams(omega_inf, r).stretch(2).power(counts.free[r])
    return f0, f1, f_inf


def product_formula_m(rho: int, cutoff: int = DEFAULT_CUTOFF) -> TruncatedSeries:
    """M_ρ as the product over Γ-orbits of 𝔾_m of powers of Z_ρ and Z_2ρ."""
    counts = gamma_counts_gm(cutoff)
    z = z_series(rho, cutoff)
    f0, f1, f_inf = _orbit_product(counts, z, z, z_series(2 * rho, cutoff), cutoff)
    return f0 * f1 * f_inf


def _compare(name: str, lhs: TruncatedSeries, rhs: TruncatedSeries) -> CheckResult:
    d = lhs.first_difference(rhs)
    if d is None:
        return CheckResult(name, True)
    return CheckResult(name, False, f"degree {d}: {lhs.coeff(d)} != {rhs.coeff(d)}")


def maintheo_check(
    datum: GammaDatum,
    omega0: TruncatedSeries,
    omega1: TruncatedSeries,
    omega_inf: TruncatedSeries,
    cutoff: int = 6,
    name: str = "maintheo",
) -> Report:
    """Compare Log F_0, Log F_1 and Log F_∞ with their closed forms in terms of Log Ω_i."""
    counts = orbit_counts(datum, cutoff)
    f0, f1, f_inf = _orbit_product(counts, omega0, omega1, omega_inf, cutoff)
    zero = constant(0)

    expected0 = pleth_log(omega0.truncate(cutoff)).scale(datum.n1)

    h1 = pleth_log(omega1.truncate(cutoff)).coefficients
    h_inf = pleth_log(omega_inf.truncate(cutoff)).coefficients
    expected1 = [zero] * (cutoff + 1)
    expected_inf = [zero] * (cutoff + 1)
    for m in range(1, cutoff // 2 + 1):
        v = two_adic_valuation(m)
        total1 = zero
        for j in range(v + 1):
            total1 = total1 + h1[m >> j].adams(2 ** (j + 1)) * Fraction(1, 2 ** j)
        expected1[2 * m] = datum.n1_twisted * total1 * Fraction(1, 2)
        total_inf = zero
        for j in range(1, v + 1):
            total_inf = total_inf + h_inf[m >> j].adams(2 ** j) * Fraction(1, 2 ** j)
        expected_inf[2 * m] = (datum.n1_sharp * h_inf[m] - datum.n1_twisted * total_inf) * Fraction(1, 2)

    checks = [
        _compare("log_f0", pleth_log(f0), expected0),
        _compare("log_f1", pleth_log(f1), TruncatedSeries(Q, tuple(expected1))),
        _compare("log_finf", pleth_log(f_inf), TruncatedSeries(Q, tuple(expected_inf))),
    ]
    return Report(name, {"cutoff": cutoff}, checks)


def random_datum(rng: np.random.Generator, degree: int = 2) -> GammaDatum:
    """A datum with small random integer polynomial counts."""
    q = _q()

    def poly():
        return sum((int(c) * q ** i for i, c in enumerate(rng.integers(-3, 4, size=degree + 1))), constant(0))

    return GammaDatum(poly(), poly(), poly())


def random_unit_series(rng: np.random.Generator, cutoff: int, degree: int = 2) -> TruncatedSeries:
    """1 + Σ c_d(q) T^d with small random integer polynomial coefficients."""
    q = _q()
    coefficients = [constant(1)]
    for _ in range(cutoff):
        draws = rng.integers(-2, 3, size=degree + 1)
        coefficients.append(sum((int(c) * q ** i for i, c in enumerate(draws)), constant(0)))
    return TruncatedSeries.from_coefficients(Q, coefficients, cutoff)


def maintheo_suite(seed: int = 0, trials: int = 20, cutoff: int = 6, rho: int = 1) -> Report:
    """The orbit-product identities for the 𝔾_m datum with Ω_i = Z_ρ, Z_ρ, Z_2ρ and for random data."""
    checks = []
    gm = maintheo_check(
        GammaDatum.multiplicative_group(),
        z_series(rho, cutoff),
        z_series(rho, cutoff),
        z_series(2 * rho, cutoff),
        cutoff,
    )
    checks.extend(dataclasses.replace(c, name=f"gm.{c.name}") for c in gm.checks)
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        datum = random_datum(rng)
        omegas = [random_unit_series(rng, cutoff) for _ in range(3)]
        report = maintheo_check(datum, *omegas, cutoff=cutoff)
        checks.extend(dataclasses.replace(c, name=f"random{trial}.{c.name}") for c in report.checks)
    return Report("maintheo", {"seed": seed, "trials": trials, "cutoff": cutoff, "rho": rho}, checks)


# identities


def _closed_form(coefficients: Sequence[RationalFunction], cutoff: int, domain: RationalDomain = Q) -> TruncatedSeries:
    return TruncatedSeries.from_coefficients(domain, coefficients, cutoff)


def _check_i_log(cutoff: int) -> CheckResult:
    q = _q()
    lhs = pleth_log(i_series(cutoff)).scale(q - 1)
    return _compare("i_log", lhs, _closed_form([0, -2, 1], cutoff))


def _check_i_star_log(cutoff: int) -> CheckResult:
    q, x, y = symbols("q X Y")
    series = i_star_series(cutoff)
    lhs = pleth_log(series).scale(q - 1)
    result = _compare("i_star_log", lhs, _closed_form([0, -x - y, x * y], cutoff, QXY))
    if not result.passed:
        return result
    # I*(q,X,0) is Euler's series and I*(q,T,T) is I(q,T)
    euler = _compare("i_star_log", series.substitute({"Y": 0}), euler_series(cutoff, "X"))
    if not euler.passed:
        return dataclasses.replace(euler, detail=f"I*(q,X,0): {euler.detail}")
    diagonal = series.substitute({"X": 1, "Y": 1})
    agreement = _compare("i_star_log", diagonal, i_series(cutoff))
    if not agreement.passed:
        return dataclasses.replace(agreement, detail=f"I*(q,T,T): {agreement.detail}")
    return result


def _check_i_star_product(cutoff: int) -> CheckResult:
    rhs = euler_series(cutoff, "X") * euler_series(cutoff, "Y") * euler_series(cutoff, "XY", inverse=True)
    return _compare("i_star_product", i_star_series(cutoff), rhs)


def _check_z_minus1(cutoff: int) -> CheckResult:
    q = _q()
    expected = [0, 1 / (q - 1), 1 / ((q ** 2 - 1) * (q - 1))]
    return _compare("z_minus1", pleth_log(z_series(-1, cutoff)), _closed_form(expected, cutoff))


def _check_m_minus1(cutoff: int) -> CheckResult:
    q = _q()
    flipped = i_series(cutoff).sign_flip()
    expected = _closed_form([0, 2 / (q - 1), 1 / (q + 1)], cutoff)
    result = _compare("m_minus1", pleth_log(flipped), expected)
    if not result.passed:
        return result
    agreement = _compare("m_minus1", m_series(-1, cutoff), flipped)
    if not agreement.passed:
        return dataclasses.replace(agreement, detail=f"M_-1(q,T) vs I(q,-T): {agreement.detail}")
    return result


def _check_m0_product(cutoff: int) -> CheckResult:
    (q,) = symbols("q")
    rhs = TruncatedSeries.one(Q, cutoff)
    for n in range(1, cutoff + 1):
        factor = TruncatedSeries.one(Q, cutoff)
        if n % 2:
            factor = (factor - TruncatedSeries.monomial(Q, 1, n, cutoff)).inverse()
            factor = factor * factor
        else:
            factor = (factor - TruncatedSeries.monomial(Q, q, n, cutoff)).inverse()
        rhs = rhs * factor
    return _compare("m0_product", m_series(0, cutoff), rhs)


IDENTITIES = {
    "i_log": _check_i_log,
    "i_star_log": _check_i_star_log,
    "i_star_product": _check_i_star_product,
    "z_minus1": _check_z_minus1,
    "m_minus1": _check_m_minus1,
    "m0_product": _check_m0_product,
}


def verify_identity(name: str, cutoff: int = DEFAULT_CUTOFF) -> CheckResult:
    """Evaluate both sides of a named identity to degree `cutoff` and report the first discrepancy."""
    if name not in IDENTITIES:
        raise ValueError(f"Unknown identity `{name}`; expected one of {', '.join(IDENTITIES)}.")
    if cutoff < 4:
        raise RangeError(f"Identities are checked to degree at least 4, found `{cutoff}`.")
    return IDENTITIES[name](cutoff)


def m_series_agreement(rhos: Sequence[int] = (-1, 0, 1, 2), cutoff: int = 6) -> Report:
    """M_ρ from W coefficients against the orbit product formula."""
    checks = [_compare(f"rho={rho}", m_series(rho, cutoff), product_formula_m(rho, cutoff)) for rho in rhos]
    return Report("mseries_agreement", {"rhos": list(rhos), "cutoff": cutoff}, checks)
