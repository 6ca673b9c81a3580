"""Counting on punctured non-orientable surfaces.

The counts for a generic tuple of semisimple classes with multiplicity type
μ are read off the plethystic Log of the Cauchy kernel

    Ω_{r,k}(z,w) = Σ_λ 𝓗_{r,λ}(z,w) Π_i H̃_λ(x_i; z^2, w^2),

whose coefficient of ``m_μ`` gives 𝕳_μ(z,w). Specializing (z,w) gives the
E-series and the conjectural mixed Poincaré series. Half-integer powers of q
are handled through the variable u with q = u^2.
"""
import dataclasses
import functools
import itertools
from fractions import Fraction
from typing import Any, Iterator, List, Optional, Sequence, Tuple, Union

from charstack.algebra import LaurentPoly, RationalFunction, as_function_of_square, constant, exact_div, symbols
from charstack.common import HOOK_BOUND, MACDONALD_BOUND, PARTITION_BOUND, BoundExceeded, DivisionNotExact
from charstack.finite_field import FiniteField, field_of_order
from charstack.partitions import (
    Partition,
    PartitionTuple,
    deformed_hook,
    hook_polynomial,
    is_all_even,
    partition_tuples,
    partitions_of,
)
from charstack.plethysm import pleth_log
from charstack.report import CheckResult, Report, Result
from charstack.series import TruncatedSeries
from charstack.symfun import SymFunc, SymFuncDomain, macdonald_statistics, monomial_coefficient

Eigenvalue = Union[int, Fraction]
ZW = ("z", "w")


def default_bound(k: int) -> int:
    """Largest n computed by default: tuple-indexed supports grow like p(n)^k."""
    return 4 if k <= 2 else 3


# class data


@dataclasses.dataclass(frozen=True)
class ClassSpec:
    """A k-tuple of semisimple conjugacy classes of GL_n, given by eigenvalues.

    Each class is a tuple of ``(eigenvalue, multiplicity)`` pairs with distinct
    eigenvalues. With a `field`, eigenvalues are elements of that field (ints);
    without one they are nonzero rationals.
    """

    classes: Tuple[Tuple[Tuple[Eigenvalue, int], ...], ...]
    field: Optional[FiniteField] = None

    def __post_init__(self):
        if not self.classes:
            raise ValueError("A class specification needs at least one class.")
        sizes = set()
        for eigenvalues in self.classes:
            values = [value for value, _ in eigenvalues]
            if len(set(values)) != len(values):
                raise ValueError(f"Eigenvalues of a class must be listed once each, found {values}.")
            for value, m in eigenvalues:
                if m < 1:
                    raise ValueError(f"Multiplicity of eigenvalue `{value}` must be positive, found `{m}`.")
                if value == 0 or (self.field is not None and not 0 < value < self.field.q):
                    raise ValueError(f"Eigenvalue `{value}` is not a nonzero element.")
            sizes.add(sum(m for _, m in eigenvalues))
        if len(sizes) != 1:
            raise ValueError(f"All classes must have the same size n, found sizes {sorted(sizes)}.")

    @classmethod
    def parse(cls, text: str, q: Optional[int] = None) -> "ClassSpec":
        """Parse ``"2,3|-1,-1"``: classes separated by ``|``, eigenvalues by commas, repeats give multiplicities.

        With `q`, eigenvalues are integers reduced into the prime field of F_q.
        """
        field = field_of_order(q) if q is not None else None
        classes = []
        for chunk in text.split("|"):
            counts = {}
            for item in chunk.split(","):
                item = item.strip()
                if not item:
                    continue
                value: Eigenvalue = int(item) % field.p if field is not None else Fraction(item)
                counts[value] = counts.get(value, 0) + 1
            classes.append(tuple(counts.items()))
        return cls(tuple(classes), field)

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def n(self) -> int:
        return sum(m for _, m in self.classes[0])

    @property
    def mu(self) -> PartitionTuple:
        """The multiplicities of each class, as a partition tuple."""
        return PartitionTuple(
            tuple(Partition(tuple(sorted((m for _, m in c), reverse=True))) for c in self.classes)
        )

    def eigenvalues(self, i: int) -> List[Eigenvalue]:
        """Eigenvalues of class `i` repeated according to multiplicity."""
        return [value for value, m in self.classes[i] for _ in range(m)]

    def product(self, values: Sequence[Eigenvalue]) -> Eigenvalue:
        result: Eigenvalue = 1 if self.field is not None else Fraction(1)
        for value in values:
            result = self.field.mul(result, value) if self.field is not None else result * value
        return result

    def determinant_product(self) -> Eigenvalue:
        return self.product([v for i in range(self.k) for v in self.eigenvalues(i)])

    def __str__(self) -> str:
        return "|".join(",".join(str(v) for v in self.eigenvalues(i)) for i in range(self.k))


@dataclasses.dataclass(frozen=True)
class Genericity:
    """Outcome of the genericity test; `witness` holds a selection whose product is 1."""

    generic: bool
    witness: Optional[Tuple[Tuple[Eigenvalue, ...], ...]] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.generic


def _sub_multisets(eigenvalues: Sequence[Tuple[Eigenvalue, int]], s: int) -> Iterator[Tuple[Eigenvalue, ...]]:
    ranges = [range(min(m, s) + 1) for _, m in eigenvalues]
    for counts in itertools.product(*ranges):
        if sum(counts) == s:
            yield tuple(v for (v, _), c in zip(eigenvalues, counts) for _ in range(c))


def is_generic(spec: ClassSpec) -> Genericity:
    """Whether the classes are generic.

    The determinants must multiply to 1, and for every ``1 <= s < n`` no choice
    of `s` eigenvalues (with multiplicity) from each class may have product 1.
    """
    if spec.determinant_product() != 1:
        return Genericity(False, None, "the product of the determinants is not 1")
    for s in range(1, spec.n):
        choices = [list(_sub_multisets(c, s)) for c in spec.classes]
        for selection in itertools.product(*choices):
            if spec.product([v for chosen in selection for v in chosen]) == 1:
                return Genericity(False, tuple(selection), f"a selection of {s} eigenvalues per class has product 1")
    return Genericity(True)


# the Cauchy kernel


def _macdonald_zw(partition: Partition, bound: int) -> SymFunc:
    """H̃_λ(x; z^2, w^2) in the monomial basis."""
    terms = {
        (content,): LaurentPoly.from_terms(ZW, {(2 * inv, 2 * maj): c for (inv, maj), c in counts.items()})
        for content, counts in macdonald_statistics(partition, bound).items()
    }
    return SymFunc(1, "m", terms, partition.size)


def _tensor_power(f: SymFunc, k: int, cutoff: int) -> SymFunc:
    terms = {}
    for combination in itertools.product(f.terms.items(), repeat=k):
        key = tuple(part for (part,), _ in combination)
        value: Any = Fraction(1)
        for _, c in combination:
            value = c * value
        terms[key] = value
    return SymFunc(k, f.basis, terms, cutoff)


@functools.lru_cache(maxsize=None)
def cauchy_omega(r: int, k: int, cutoff: int, bound: int = MACDONALD_BOUND) -> TruncatedSeries:
    """Ω_{r,k} to degree `cutoff`, graded by the common degree of the k variable sets.

    Raises:
        BoundExceeded: if `cutoff` is above the Macdonald `bound`.
    """
    if r < 1 or k < 1:
        raise ValueError(f"`r` and `k` must be positive, found r=`{r}`, k=`{k}`.")
    if cutoff > bound:
        raise BoundExceeded(f"The Cauchy kernel is computed to degree {bound} at most, found `{cutoff}`.")
    domain = SymFuncDomain(k, ZW, cutoff)
    coefficients = [domain.one()]
    for n in range(1, cutoff + 1):
        total = domain.zero()
        for lam in partitions_of(n):
            total = total + _tensor_power(_macdonald_zw(lam, bound), k, cutoff) * deformed_hook(r, lam)
        coefficients.append(total)
    return TruncatedSeries(domain, tuple(coefficients))


@functools.lru_cache(maxsize=None)
def _log_omega(r: int, k: int, cutoff: int) -> TruncatedSeries:
    return pleth_log(cauchy_omega(r, k, cutoff))


def _normalizer() -> LaurentPoly:
    z, w = symbols("z w")
    return (z ** 2 - 1) * (1 - w ** 2)


# 𝕳_μ and its specializations


def d_mu(r: int, k: int, mu: PartitionTuple) -> int:
    """d_μ = n^2 (r - 2 + k) + 2 - Σ (μ^i_j)^2."""
    n = mu.size
    return n * n * (r - 2 + k) + 2 - sum(part * part for component in mu for part in component)


def _u_specialization(value: RationalFunction, d: int) -> RationalFunction:
    """u^d value(u, 1/u), as a function of q = u^2."""
    (u,) = symbols("u")
    return as_function_of_square(u ** d * value.substitute({"z": u, "w": 1 / u}))


@dataclasses.dataclass(frozen=True)
class HHValue:
    """𝕳_μ(z,w) for the surface with `r` cross-caps and k = len(μ) punctures."""

    mu: PartitionTuple
    r: int
    value: RationalFunction

    def __post_init__(self):
        if self.r >= 2:
            specialized = _u_specialization(self.value, d_mu(self.r, self.mu.k, self.mu))
            assert isinstance(specialized, LaurentPoly), f"u^d H_mu(u,1/u) is not a polynomial in q for {self.mu}"

    def __str__(self) -> str:
        return str(self.value)


def _check_mu(k: int, mu: PartitionTuple, bound: Optional[int]) -> int:
    if mu.k != k:
        raise ValueError(f"`{mu}` has {mu.k} components, expected k=`{k}`.")
    n = mu.size
    if n < 1:
        raise ValueError(f"`{mu}` must have positive size.")
    bound = default_bound(k) if bound is None else bound
    if n > bound:
        raise BoundExceeded(f"|μ| = {n} is above the bound {bound} for k={k}.")
    return n


def hh_mu(r: int, k: int, mu: PartitionTuple, bound: Optional[int] = None) -> HHValue:
    """(z^2-1)(1-w^2) ⟨Log Ω_{r,k}, h_μ⟩: the coefficient of m_μ in the plethystic Log.

    Raises:
        BoundExceeded: if |μ| is above `bound` (default ``default_bound(k)``).
    """
    n = _check_mu(k, mu, bound)
    coefficient = monomial_coefficient(_log_omega(r, k, n).coeff(n), *mu.components)
    return HHValue(mu, r, _normalizer() * coefficient)


def hh_table(r: int, k: int, n: int, bound: Optional[int] = None) -> List[HHValue]:
    """hh_mu for every partition tuple of size `n` with `k` components."""
    return [hh_mu(r, k, mu, bound) for mu in partition_tuples(n, k)]


def e_count_punctured(r: int, k: int, mu: PartitionTuple, bound: Optional[int] = None) -> RationalFunction:
    """q^(d/2) 𝕳_μ(√q, 1/√q) / (q - 1), the E-series of the character stack.

    Raises:
        OddPowersRemain: if the result is not a function of q.
    """
    value = hh_mu(r, k, mu, bound).value
    (q,) = symbols("q")
    return _u_specialization(value, d_mu(r, k, mu)) / (q - 1)


def mixed_poincare(r: int, k: int, mu: PartitionTuple, bound: Optional[int] = None) -> RationalFunction:
    """(t√q)^d 𝕳_μ(t√q, -1/√q) / (q t^2 - 1), the conjectured mixed Poincaré series.

    Raises:
        OddPowersRemain: if the result is not a function of q and t.
    """
    value = hh_mu(r, k, mu, bound).value
    t, u = symbols("t u")
    specialized = (t * u) ** d_mu(r, k, mu) * value.substitute({"z": t * u, "w": -1 / u})
    return as_function_of_square(specialized / (u ** 2 * t ** 2 - 1))


def e_series_pure_check(r: int, k: int, mu: PartitionTuple, bound: Optional[int] = None) -> Report:
    """The mixed Poincaré series at t = -1 against the E-series."""
    poincare = mixed_poincare(r, k, mu, bound)
    e_series = e_count_punctured(r, k, mu, bound)
    at_minus_one = poincare.substitute({"t": -1})
    passed = at_minus_one == e_series
    detail = "" if passed else f"{at_minus_one} != {e_series}"
    entries = [
        Result("mixed_poincare", poincare),
        Result("e_count", e_series),
        CheckResult("t=-1", passed, detail),
    ]
    return Report("e_series_pure", {"r": r, "k": k, "mu": str(mu)}, entries)


# identities and observations


def _rank_one_values() -> List[Tuple[str, RationalFunction]]:
    z, w = symbols("z w")
    return [("1", z - w), ("2", 1 / (z ** 2 + 1)), ("1,1", constant(1, ZW))]


def _check_lemma_rk1(bound: int) -> List[CheckResult]:
    checks = []
    for literal, expected in _rank_one_values():
        value = hh_mu(1, 1, PartitionTuple.parse(literal)).value
        passed = value == expected
        checks.append(CheckResult(f"lemma_rk1.({literal})", passed, "" if passed else f"{value} != {expected}"))
    return checks


def _check_conj_0conj(bound: int) -> List[CheckResult]:
    """All m_λ coefficients of (z^2-1)(1-w^2) Log Ω_{1,1} vanish above degree 2."""
    expected = dict(_rank_one_values())
    log_omega = _log_omega(1, 1, bound)
    checks = []
    for n in range(1, bound + 1):
        offending = None
        for lam in partitions_of(n):
            value = _normalizer() * monomial_coefficient(log_omega.coeff(n), lam)
            target = expected.get(",".join(str(p) for p in lam.parts), 0) if n <= 2 else 0
            if value != target:
                offending = f"coefficient of m{lam} is {value}"
                break
        checks.append(CheckResult(f"conj_0conj.degree{n}", offending is None, offending or "", fatal=False))
    return checks


def _check_euler_spec(bound: int, rs: Sequence[int] = (1, 2, 3)) -> List[CheckResult]:
    """𝓗_{r,λ}(u, 1/u) = u^(-ρ⟨λ,λ⟩) H_λ(u^2)^ρ with ρ = r - 2."""
    (u,) = symbols("u")
    checks = []
    for r in rs:
        rho = r - 2
        failure = ""
        for n in range(bound + 1):
            for lam in partitions_of(n):
                lhs = deformed_hook(r, lam).substitute({"z": u, "w": 1 / u})
                rhs = u ** (-rho * lam.inner) * hook_polynomial(lam).substitute({"q": u ** 2}) ** rho
                if lhs != rhs:
                    failure = f"λ={lam}: {lhs} != {rhs}"
                    break
            if failure:
                break
        checks.append(CheckResult(f"euler_spec.r={r}", not failure, failure))
    return checks


def _check_sign_symmetry(bound: int, rs: Sequence[int] = (1, 2, 3)) -> List[CheckResult]:
    """𝓗_{r,λ}(w, z) = (-1)^(r|λ|) 𝓗_{r,λ'}(z, w)."""
    z, w = symbols("z w")
    checks = []
    for r in rs:
        failure = ""
        for n in range(bound + 1):
            for lam in partitions_of(n):
                swapped = deformed_hook(r, lam).substitute({"z": w, "w": z})
                expected = deformed_hook(r, lam.conjugate) * (-1) ** (r * n)
                if swapped != expected:
                    failure = f"λ={lam}: {swapped} != {expected}"
                    break
            if failure:
                break
        checks.append(CheckResult(f"sign_symmetry.r={r}", not failure, failure))
    return checks


CONJECTURES = {
    "lemma_rk1": _check_lemma_rk1,
    "conj_0conj": _check_conj_0conj,
    "euler_spec": _check_euler_spec,
    "sign_symmetry": _check_sign_symmetry,
}


# identities of the deformed hooks alone; no Macdonald polynomials involved
HOOK_CHECKS = ("euler_spec", "sign_symmetry")


def conjecture_checks(
    which: Sequence[str] = tuple(CONJECTURES), bound: int = 4, hook_bound: int = HOOK_BOUND
) -> Report:
    """Run the named identity and conjecture checks.

    Args:
        which: names from `CONJECTURES`.
        bound: largest degree for the checks going through Ω.
        hook_bound: largest |λ| for the deformed-hook identities `HOOK_CHECKS`.

    Failures of ``conj_0conj`` are reported, not fatal.
    """
    unknown = [name for name in which if name not in CONJECTURES]
    if unknown:
        raise ValueError(f"Unknown checks {unknown}; expected some of {', '.join(CONJECTURES)}.")
    if bound > MACDONALD_BOUND:
        raise BoundExceeded(f"Checks run to degree {MACDONALD_BOUND} at most, found `{bound}`.")
    if hook_bound > PARTITION_BOUND:
        raise BoundExceeded(f"Hook identities run to |λ| = {PARTITION_BOUND} at most, found `{hook_bound}`.")
    checks: List[CheckResult] = []
    for name in which:
        checks.extend(CONJECTURES[name](hook_bound if name in HOOK_CHECKS else bound))
    return Report("conjectures", {"which": list(which), "bound": bound, "hook_bound": hook_bound}, checks)


def _power_of(denominator: LaurentPoly, factor: LaurentPoly) -> Optional[int]:
    """j with denominator = factor^j up to a constant, or None."""
    j = 0
    while not denominator.is_constant:
        try:
            denominator = exact_div(denominator, factor)
        except DivisionNotExact:
            return None
        j += 1
    return j


def denominator_observation(bound: int = 4) -> Report:
    """Denominators of 𝕳_μ for r = k = 1 are powers of z^2 + 1, nontrivial only for n = 2 mod 4 and μ even."""
    (z,) = symbols("z")
    factor = z ** 2 + 1
    checks = []
    for n in range(1, bound + 1):
        for mu in partition_tuples(n, 1):
            value = hh_mu(1, 1, mu, bound).value
            j = _power_of(value.denominator, factor)
            allowed = n % 4 == 2 and is_all_even(mu.components[0])
            if j is None:
                checks.append(CheckResult(f"mu={mu}", False, f"denominator {value.denominator}", fatal=False))
            elif j and not allowed:
                detail = f"unexpected denominator {value.denominator}"
                checks.append(CheckResult(f"mu={mu}", False, detail, fatal=False))
            else:
                checks.append(CheckResult(f"mu={mu}", True, fatal=False))
    return Report("denominators", {"bound": bound}, checks)


def _closed_forms() -> List[Tuple[str, RationalFunction, RationalFunction]]:
    q, t = symbols("q t")
    qt2 = q * t ** 2
    return [
        ("1", constant(1), (t + qt2) / (qt2 - 1)),
        ("2", 1 / (q * (q ** 2 - 1)), 1 / (qt2 * (qt2 - 1) * (qt2 + 1))),
        ("1,1", 1 / (q - 1), 1 / (qt2 - 1)),
    ]


def closed_forms_check() -> Report:
    """E-series and mixed Poincaré series of the once-punctured projective plane for n <= 2."""
    checks = []
    for literal, e_series, poincare in _closed_forms():
        mu = PartitionTuple.parse(literal)
        for name, value, expected in (
            (f"e_count.({literal})", e_count_punctured(1, 1, mu), e_series),
            (f"mixed_poincare.({literal})", mixed_poincare(1, 1, mu), poincare),
        ):
            passed = value == expected
            checks.append(CheckResult(name, passed, "" if passed else f"{value} != {expected}"))
    return Report("closed_forms", {"r": 1, "k": 1}, checks)


def e_series_consistency(rs: Sequence[int] = (1, 2, 3), nmax: int = 3, ks: Sequence[int] = (1, 2)) -> Report:
    """e_series_pure_check for every μ with k in `ks` components and |μ| <= nmax."""
    checks = []
    for k in ks:
        for r in rs:
            for n in range(1, nmax + 1):
                for mu in partition_tuples(n, k):
                    (check,) = e_series_pure_check(r, k, mu).checks
                    checks.append(dataclasses.replace(check, name=f"r={r},mu={mu}"))
    return Report("e_series_consistency", {"rs": list(rs), "nmax": nmax, "ks": list(ks)}, checks)
