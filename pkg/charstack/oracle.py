"""Brute-force ground truth for the closed formulas.

Each suite enumerates small finite groups or fields, counts directly and
compares with the formula value. Cases run on a thread pool of
``CHARSTACK_NUM_THREADS`` workers; results keep the order of the cases.
"""
import asyncio
import concurrent.futures
import contextlib
import dataclasses
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from clikit.io import ConsoleIO

from charstack.common import ORBIT_BUDGET, ORBIT_SET_BUDGET, BudgetExceeded, num_threads, progress
from charstack.finite_field import FiniteField, field_of_order, finite_field
from charstack.groups import build_group, correspondence_check, idempotent_count, real_class_count, rep_count
from charstack.nonorient import OrbitCounts, e_count_nonorient, gamma_counts_gm, involution_count, mobius_orbit_counts
from charstack.punctured import ClassSpec, e_count_punctured, is_generic
from charstack.report import CheckResult, Entry, Report, Result


def run_cases(
    function: Callable[[Any], Any], cases: Sequence[Any], message: str, io: Optional[ConsoleIO] = None
) -> List:
    """Evaluate `function` on every case in worker threads; results are in case order.

    A progress bar is shown on `io` when one is given.
    """

    async def go():
        loop = asyncio.get_running_loop()
        with concurrent.futures.ThreadPoolExecutor(max_workers=num_threads()) as executor:
            futures = [loop.run_in_executor(executor, function, case) for case in cases]
            bar_context = progress(message, len(cases), io) if io is not None else contextlib.nullcontext()
            with bar_context as progress_bar:
                for completed in asyncio.as_completed(futures):
                    await completed
                    if progress_bar is not None:
                        progress_bar.advance()
            return [future.result() for future in futures]

    return asyncio.run(go())


def _equality(name: str, count: int, formula: Fraction) -> List[Entry]:
    passed = count == formula
    detail = "" if passed else f"count {count} != formula {formula}"
    return [Result(f"{name}.count", count), Result(f"{name}.formula", formula), CheckResult(name, passed, detail)]


# Γ-orbits


@dataclasses.dataclass(frozen=True, eq=False)
class GammaSet:
    """A finite set with commuting permutations F and σ, σ an involution, as index tables."""

    name: str
    frobenius: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        size = len(self.frobenius)
        if size > ORBIT_SET_BUDGET:
            raise BudgetExceeded(f"`{self.name}` has {size} points, above the budget {ORBIT_SET_BUDGET}.")
        identity = np.arange(size)
        for label, table in (("F", self.frobenius), ("σ", self.sigma)):
            if len(table) != size or not np.array_equal(np.sort(table), identity):
                raise ValueError(f"{label} is not a permutation of the {size} points of `{self.name}`.")
        if not np.array_equal(self.sigma[self.sigma], identity):
            raise ValueError(f"σ is not an involution on `{self.name}`.")
        if not np.array_equal(self.frobenius[self.sigma], self.sigma[self.frobenius]):
            raise ValueError(f"F and σ do not commute on `{self.name}`.")

    @property
    def size(self) -> int:
        return len(self.frobenius)

    def frobenius_powers(self, bound: int) -> List[np.ndarray]:
        """``[F^0, F^1, ..., F^bound]`` as index tables."""
        powers = [np.arange(self.size)]
        for _ in range(bound):
            powers.append(self.frobenius[powers[-1]])
        return powers

    def period(self) -> int:
        """Smallest j >= 1 with F^j = id."""
        identity = np.arange(self.size)
        current, j = self.frobenius, 1
        while not np.array_equal(current, identity):
            current, j = self.frobenius[current], j + 1
        return j


def cyclic_gamma_set(field: FiniteField, base: int, m: Optional[int] = None) -> GammaSet:
    """The m-th roots of unity of `field` (default all of F^×) with F(x) = x^base and σ(x) = 1/x."""
    points = field.nonzero() if m is None else field.roots_of_unity(m)
    position = np.full(field.q, -1, dtype=np.int64)
    position[points] = np.arange(len(points))
    frobenius = position[field.power(points, base)]
    sigma = position[field.inverse(points)]
    label = f"F_{field.q}^x" if m is None else f"mu_{m} in F_{field.q}"
    return GammaSet(f"{label}, F = x^{base}", frobenius, sigma)


def _direct_counts(points: GammaSet, bound: int) -> Tuple[Dict[int, int], ...]:
    """Orbits of each kind by inspecting every point whose F-orbit has size at most `bound`."""
    powers = points.frobenius_powers(bound)
    identity = powers[0]
    degree = np.zeros(points.size, dtype=np.int64)
    for j in range(1, bound + 1):
        degree[(degree == 0) & (powers[j] == identity)] = j
    on_fixed_locus = points.sigma == identity
    fixed, twisted, free, sharp = {}, {}, {}, {}
    for d in range(1, bound + 1):
        exact = degree == d
        off = exact & ~on_fixed_locus
        tw = off & (powers[d // 2] == points.sigma) if d % 2 == 0 else np.zeros_like(off)
        fr = off & ~tw
        for table, mask, size in ((fixed, exact & on_fixed_locus, d), (sharp, off, d), (free, fr, 2 * d)):
            total = int(mask.sum())
            assert total % size == 0, f"{total} points do not split into orbits of size {size}"
            table[d] = total // size
        if d % 2 == 0:
            twisted[d // 2] = int(tw.sum()) // d
    return fixed, twisted, free, sharp


def gamma_orbit_oracle(q: int, dmax: int) -> OrbitCounts:
    """Γ-orbits on the multiplicative group of the algebraic closure of F_q, enumerated degree by degree.

    Orbits of F-degree d are found among the elements of F_{q^d}^× of exact degree d.

    Raises:
        BudgetExceeded: if ``q^dmax`` is above ``ORBIT_BUDGET``.
    """
    if dmax < 1:
        raise ValueError(f"`dmax` must be positive, found `{dmax}`.")
    if q ** dmax > ORBIT_BUDGET:
        raise BudgetExceeded(f"{q}^{dmax} is above the orbit budget {ORBIT_BUDGET}.")
    base = field_of_order(q)
    fixed, twisted, free, sharp = {}, {}, {}, {}
    for d in range(1, dmax + 1):
        points = cyclic_gamma_set(finite_field(base.p, base.e * d), q)
        counts = _direct_counts(points, d)
        fixed[d], free[d], sharp[d] = counts[0][d], counts[2][d], counts[3][d]
        if d % 2 == 0:
            twisted[d // 2] = counts[1][d // 2]
    return OrbitCounts(dmax, fixed, twisted, free, sharp)


def _compare_orbit_tables(
    observed: OrbitCounts, expected: Callable[[str, int], Any], prefix: str = ""
) -> List[CheckResult]:
    checks = []
    tables = (
        ("fixed", observed.fixed),
        ("twisted", observed.twisted),
        ("free", observed.free),
        ("sharp", observed.sharp),
    )
    for kind, table in tables:
        for d in sorted(table):
            value = expected(kind, d)
            passed = table[d] == value
            checks.append(CheckResult(f"{prefix}{kind}[{d}]", passed, "" if passed else f"{table[d]} != {value}"))
    return checks


def gamma_orbit_check(q: int, dmax: int = 4) -> Report:
    """Enumerated Γ-orbit counts against the 𝔾_m polynomials evaluated at `q`."""
    observed = gamma_orbit_oracle(q, dmax)
    formula = gamma_counts_gm(dmax)
    tables = {"fixed": formula.fixed, "twisted": formula.twisted, "free": formula.free, "sharp": formula.sharp}
    checks = _compare_orbit_tables(observed, lambda kind, d: tables[kind][d].evaluate(q=q))
    return Report("orbits", {"q": q, "dmax": dmax}, checks)


def orbit_prop_oracle(points: GammaSet, bound: Optional[int] = None) -> Report:
    """Orbit counts of each kind, directly and through Möbius inversion of the fixed-point counts of F^s."""
    bound = points.period() if bound is None else bound
    powers = points.frobenius_powers(bound)
    identity = powers[0]
    on_fixed_locus = points.sigma == identity

    def n1(s: int) -> int:
        return int(((powers[s] == identity) & on_fixed_locus).sum())

    def n1_twisted(s: int) -> int:
        return int(((powers[s] == points.sigma) & ~on_fixed_locus).sum())

    def n1_sharp(s: int) -> int:
        return int(((powers[s] == identity) & ~on_fixed_locus).sum())

    fixed, twisted, free, sharp = _direct_counts(points, bound)
    observed = OrbitCounts(bound, fixed, twisted, free, sharp)
    formula = dict(zip(("fixed", "twisted", "free", "sharp"), mobius_orbit_counts(n1, n1_twisted, n1_sharp, bound)))
    checks = _compare_orbit_tables(observed, lambda kind, d: formula[kind][d])
    return Report("orbit_prop", {"set": points.name, "bound": bound}, checks)


def orbit_suite(qs: Iterable[int] = (3, 5, 7, 9), dmax: int = 4) -> Report:
    """Γ-orbit enumeration for several q, plus the Möbius formulas on F_25^× and on μ_12."""
    checks: List[Entry] = []
    for q in qs:
        report = gamma_orbit_check(q, dmax)
        checks.extend(dataclasses.replace(c, name=f"q={q}.{c.name}") for c in report.checks)
    f25 = finite_field(5, 2)
    for label, points in (("F25", cyclic_gamma_set(f25, 5)), ("mu12", cyclic_gamma_set(f25, 5, 12))):
        report = orbit_prop_oracle(points)
        checks.extend(dataclasses.replace(c, name=f"{label}.{c.name}") for c in report.checks)
    return Report("oracle orbits", {"q": list(qs), "dmax": dmax}, checks)


# representation counts


NONORIENT_CASES = tuple(
    [(n, r, q) for n in (1, 2) for r in (1, 2, 3) for q in (3, 5)]
    + [(2, r, 7) for r in (1, 2)]
    + [(3, r, 3) for r in (1, 2)]
)


def _nonorient_case(case: Tuple[int, int, int]) -> List[Entry]:
    n, r, q = case
    group = build_group(n, q)
    count = rep_count(group, "untwisted", r)
    formula = e_count_nonorient(r - 2, n).evaluate(q=q) * group.order
    return _equality(f"n={n},r={r},q={q}", count, formula)


def _class_case(case: Tuple[int, int]) -> List[Entry]:
    n, q = case
    group = build_group(n, q)
    entries = _equality(f"real_classes.n={n},q={q}", real_class_count(group), e_count_nonorient(0, n).evaluate(q=q))
    return entries + _equality(f"idempotents.n={n},q={q}", idempotent_count(n, q), involution_count(n).evaluate(q=q))


def nonorient_oracle(
    cases: Sequence[Tuple[int, int, int]] = NONORIENT_CASES, io: Optional[ConsoleIO] = None
) -> Report:
    """#{A_1^2 ... A_r^2 = 1} in GL_n(F_q) by convolution, against e_count_nonorient times |GL_n(F_q)|."""
    entries: List[Entry] = []
    for result in run_cases(_nonorient_case, list(cases), "Counting representations...", io):
        entries.extend(result)
    for result in run_cases(_class_case, sorted({(n, q) for n, _, q in cases}), "Counting classes...", io):
        entries.extend(result)
    return Report("oracle nonorient", {"cases": [list(case) for case in cases]}, entries)


PUNCTURED_CASES = (
    (1, "1", 3),
    (1, "1", 5),
    (1, "1", 7),
    (2, "1", 3),
    (1, "-1,-1", 5),
    (1, "2,3", 5),
    (1, "-1,-1", 7),
    (1, "2,4", 7),
)


def _punctured_case(case: Tuple[int, str, int]) -> List[Entry]:
    r, eigenvalues, q = case
    spec = ClassSpec.parse(eigenvalues, q)
    if spec.field.e != 1:
        raise ValueError(f"Group tables need a prime field, found q=`{q}`.")
    genericity = is_generic(spec)
    if not genericity:
        raise ValueError(f"Classes `{spec}` over F_{q} are not generic: {genericity.reason}.")
    group = build_group(spec.n, q)
    classes = [int(group.class_of[group.diagonal(spec.eigenvalues(i))]) for i in range(spec.k)]
    count = rep_count(group, "twisted", r, classes)
    formula = e_count_punctured(r, spec.k, spec.mu).evaluate(q=q) * group.order
    return _equality(f"r={r},q={q},eigenvalues={spec}", count, formula)


def punctured_oracle(
    cases: Sequence[Tuple[int, str, int]] = PUNCTURED_CASES, io: Optional[ConsoleIO] = None
) -> Report:
    """Twisted counts with generic semisimple classes against e_count_punctured times |GL_n(F_q)|."""
    entries: List[Entry] = []
    for result in run_cases(_punctured_case, list(cases), "Counting twisted representations...", io):
        entries.extend(result)
    return Report("oracle punctured", {"cases": [list(case) for case in cases]}, entries)


def _correspondence_case(case: Tuple[int, int]) -> List[Entry]:
    n, q = case
    group = build_group(n, q)
    entries: List[Entry] = []
    for c, h in enumerate(group.class_representatives):
        count_a, count_b, equal = correspondence_check(group, int(h))
        name = f"n={n},q={q},class={c}"
        entries.append(Result(f"{name}.counts", [count_a, count_b]))
        entries.append(CheckResult(name, equal, "" if equal else f"{count_a} != {count_b}"))
    return entries


def correspondence_oracle(
    cases: Sequence[Tuple[int, int]] = ((1, 3), (1, 5), (2, 3)), io: Optional[ConsoleIO] = None
) -> Report:
    """#{x z σ(x) z^(-1) = h} against #{x z x^(-1) z^(-1) = h} for a representative h of every class."""
    entries: List[Entry] = []
    for result in run_cases(_correspondence_case, list(cases), "Counting pairs...", io):
        entries.extend(result)
    return Report("oracle correspondence", {"cases": [list(case) for case in cases]}, entries)
