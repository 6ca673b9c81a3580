"""Adams operations and the plethystic Log / Exp pair.

``Log`` is computed in two steps: the ordinary logarithm ``log f = Σ U_n T^n / n``
followed by the Möbius-Adams resummation

    V_n = (1/n) Σ_{d | n} μ(d) ψ_d(U_{n/d}),

and ``Exp`` runs the same steps backwards.
"""
from fractions import Fraction
from typing import Any

from charstack.common import ExpOfNonzeroConstant, LogOfNonUnit, divisors, mobius
from charstack.series import TruncatedSeries


def adams(f: TruncatedSeries, n: int) -> TruncatedSeries:
    """Apply ψ_n: coefficients through the domain's Adams action, degree d moved to degree n*d."""
    if n < 1:
        raise ValueError(f"Adams operations are indexed by positive integers, found `{n}`.")
    domain = f.domain
    result = [domain.zero()] * (f.cutoff + 1)
    for d, c in enumerate(f.coefficients):
        if d * n > f.cutoff:
            break
        result[d * n] = domain.adams(c, n) if d else c
    return TruncatedSeries(domain, tuple(result), f.variable)


def pleth_log(f: TruncatedSeries) -> TruncatedSeries:
    """Plethystic logarithm of a series with constant term 1."""
    domain = f.domain
    if not domain.is_one(f.coefficients[0]):
        raise LogOfNonUnit("Plethystic Log needs a series with constant term 1.")
    logs = f.log().coefficients
    # U_n = n * [T^n] log f
    u = [domain.zero()] + [logs[n] * n for n in range(1, f.cutoff + 1)]
    result = [domain.zero()]
    for n in range(1, f.cutoff + 1):
        total = domain.zero()
        for d in divisors(n):
            mu = mobius(d)
            if mu and not domain.is_zero(u[n // d]):
                total = total + domain.adams(u[n // d], d) * mu
        result.append(total * Fraction(1, n))
    return TruncatedSeries(domain, tuple(result), f.variable)


def pleth_exp(g: TruncatedSeries) -> TruncatedSeries:
    """Plethystic exponential of a series with constant term 0."""
    domain = g.domain
    if not domain.is_zero(g.coefficients[0]):
        raise ExpOfNonzeroConstant("Plethystic Exp needs a series with constant term 0.")
    # Ψ(g) = Σ_n ψ_n(g) / n
    psi = [domain.zero()]
    for m in range(1, g.cutoff + 1):
        total = domain.zero()
        for d in divisors(m):
            c = g.coefficients[m // d]
            if not domain.is_zero(c):
                total = total + domain.adams(c, d) * Fraction(1, d)
        psi.append(total)
    return TruncatedSeries(domain, tuple(psi), g.variable).exp()


def power(f: TruncatedSeries, c: Any) -> TruncatedSeries:
    """``f ** c`` for a coefficient-valued exponent, as ``exp(c * log f)``."""
    return f.power(c)
