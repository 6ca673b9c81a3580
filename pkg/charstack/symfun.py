"""Symmetric functions in k sets of variables.

An element is a finite map from k-tuples of partitions to coefficients in one
of four bases: monomial ``m``, power sum ``p``, complete homogeneous ``h`` and
Schur ``s``. Every change of basis goes through the power sums, where products
are cheap (merge the partitions factor by factor) and the Hall pairing is
diagonal. Degrees above the cutoff of a variable set are dropped by products.

Modified Macdonald polynomials are computed from the combinatorial filling
formula and memoized.
"""
import dataclasses
import functools
import itertools
import threading
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

import sympy
from sympy.utilities.iterables import multiset_permutations

from charstack.algebra import LaurentPoly, RationalFunction, constant, render
from charstack.common import (
    MACDONALD_BOUND,
    PARTITION_BOUND,
    SYMFUNC_CUTOFF,
    BasisMismatch,
    BoundExceeded,
    CutoffExceeded,
    InverseOfNonUnit,
)
from charstack.partitions import Partition, merge, partitions_of, scale, z_lambda
from charstack.series import AdamsDomain, RationalDomain

BASES = ("m", "p", "h", "s")
Key = Tuple[Partition, ...]
Row = Mapping[Partition, Fraction]


def _is_zero(c: Any) -> bool:
    return c == 0


@dataclasses.dataclass(frozen=True, eq=False)
class SymFunc:
    """A symmetric function in `k` variable sets, stored in one basis.

    Keys of `terms` are k-tuples of partitions, coefficients are numbers or
    rational functions. Zero coefficients are dropped on construction.
    """

    k: int
    basis: str
    terms: Mapping[Key, Any]
    cutoff: int = SYMFUNC_CUTOFF

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"A symmetric function needs at least one variable set, found k=`{self.k}`.")
        if self.basis not in BASES:
            raise ValueError(f"Unknown basis `{self.basis}`; expected one of {', '.join(BASES)}.")
        terms = {}
        for key, c in self.terms.items():
            key = tuple(key)
            if len(key) != self.k:
                raise ValueError(f"Key `{_key_str(key)}` does not have {self.k} components.")
            if any(part.size > self.cutoff for part in key):
                raise CutoffExceeded(f"Key `{_key_str(key)}` has a degree above the cutoff `{self.cutoff}`.")
            if not _is_zero(c):
                terms[key] = c
        object.__setattr__(self, "terms", terms)

    # constructors

    @classmethod
    def basis_element(cls, basis: str, *partitions: Partition, cutoff: int = SYMFUNC_CUTOFF) -> "SymFunc":
        """``b_{λ¹} ⊗ ... ⊗ b_{λᵏ}`` with one partition per variable set."""
        key = tuple(p if isinstance(p, Partition) else Partition(tuple(p)) for p in partitions)
        return cls(len(key), basis, {key: Fraction(1)}, cutoff)

    @classmethod
    def scalar(cls, c: Any, k: int = 1, cutoff: int = SYMFUNC_CUTOFF) -> "SymFunc":
        return cls(k, "p", {(Partition(()),) * k: c}, cutoff)

    @classmethod
    def zero(cls, k: int = 1, cutoff: int = SYMFUNC_CUTOFF) -> "SymFunc":
        return cls(k, "p", {}, cutoff)

    # inspection

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_scalar(self) -> bool:
        return all(part.size == 0 for key in self.terms for part in key)

    @property
    def scalar_value(self) -> Any:
        """Coefficient of the empty key (the degree-0 part)."""
        return self.terms.get((Partition(()),) * self.k, Fraction(0))

    def coefficient(self, *partitions: Partition) -> Any:
        return self.terms.get(tuple(partitions), Fraction(0))

    def to(self, basis: str) -> "SymFunc":
        return basis_convert(self, basis)

    # arithmetic

    def _check(self, other: "SymFunc"):
        if self.k != other.k:
            raise BasisMismatch(f"Cannot combine functions of {self.k} and {other.k} variable sets.")

    def _lift(self, other) -> "SymFunc":
        if isinstance(other, SymFunc):
            self._check(other)
            return other
        return SymFunc.scalar(other, self.k, self.cutoff)

    def __add__(self, other) -> "SymFunc":
        other = self._lift(other)
        basis = self.basis if self.basis == other.basis else "p"
        a, b = self.to(basis), other.to(basis)
        cutoff = min(self.cutoff, other.cutoff)
        terms = {key: c for key, c in a.terms.items() if all(p.size <= cutoff for p in key)}
        for key, c in b.terms.items():
            if all(p.size <= cutoff for p in key):
                terms[key] = terms[key] + c if key in terms else c
        return SymFunc(self.k, basis, terms, cutoff)

    __radd__ = __add__

    def __neg__(self) -> "SymFunc":
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other) -> "SymFunc":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "SymFunc":
        return (-self) + other

    def __mul__(self, other) -> "SymFunc":
        if not isinstance(other, SymFunc):
            return self.map_coefficients(lambda c: c * other)
        self._check(other)
        if other.is_scalar:
            return self * other.scalar_value
        if self.is_scalar:
            return other * self.scalar_value
        cutoff = min(self.cutoff, other.cutoff)
        a, b = self.to("p").terms, other.to("p").terms
        terms: Dict[Key, Any] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                key = tuple(merge(x, y) for x, y in zip(ka, kb))
                if any(part.size > cutoff for part in key):
                    continue
                value = ca * cb
                terms[key] = terms[key] + value if key in terms else value
        return SymFunc(self.k, "p", terms, cutoff)

    def __rmul__(self, other) -> "SymFunc":
        return self.map_coefficients(lambda c: other * c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            if isinstance(other, (int, Fraction, RationalFunction)):
                other = SymFunc.scalar(other, self.k, self.cutoff)
            else:
                return NotImplemented
        if self.k != other.k:
            return False
        return (self - other).is_zero

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None  # type: ignore

    def map_coefficients(self, func: Callable[[Any], Any]) -> "SymFunc":
        return SymFunc(self.k, self.basis, {key: func(c) for key, c in self.terms.items()}, self.cutoff)

    def adams(self, n: int, coefficient_adams: Optional[Callable[[Any, int], Any]] = None) -> "SymFunc":
        """ψ_n: ``p_j -> p_{nj}`` in every variable set, and ψ_n on the coefficients."""
        assert n >= 1, n
        terms: Dict[Key, Any] = {}
        for key, c in self.to("p").terms.items():
            scaled = tuple(scale(part, n) for part in key)
            if any(part.size > self.cutoff for part in scaled):
                continue
            terms[scaled] = coefficient_adams(c, n) if coefficient_adams else c
        return SymFunc(self.k, "p", terms, self.cutoff)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (tuple(p.size for p in k), k), reverse=True):
            text = render(self.terms[key])
            if all(part.size == 0 for part in key):
                parts.append(text)
                continue
            element = f"{self.basis}[{_key_str(key)}]"
            if text == "1":
                parts.append(element)
            elif text == "-1":
                parts.append(f"-{element}")
            elif " " in text or "/" in text:
                parts.append(f"({text})*{element}")
            else:
                parts.append(f"{text}*{element}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"<SymFunc k={self.k} basis={self.basis} {self}>"


def _key_str(key: Iterable[Partition]) -> str:
    return "|".join(",".join(str(p) for p in part.parts) for part in key)


# transition matrices, one degree at a time


def _partitions(d: int) -> Sequence[Partition]:
    return partitions_of(d, bound=max(d, PARTITION_BOUND))


def _identity(d: int) -> Dict[Partition, Row]:
    return {lam: {lam: Fraction(1)} for lam in _partitions(d)}


def _refinements(parts: Tuple[int, ...], blocks: Tuple[int, ...]) -> int:
    """Ways to place the labelled `parts` into the labelled `blocks` with exact block sums."""

    @functools.lru_cache(maxsize=None)
    def count(i: int, remaining: Tuple[int, ...]) -> int:
        if i == len(parts):
            return int(not any(remaining))
        total = 0
        for b, room in enumerate(remaining):
            if room >= parts[i]:
                total += count(i + 1, remaining[:b] + (room - parts[i],) + remaining[b + 1 :])
        return total

    return count(0, blocks)


@functools.lru_cache(maxsize=None)
def _power_sums_in_monomials(d: int) -> Dict[Partition, Row]:
    """p_λ = Σ_μ R(λ, μ) m_μ."""
    rows = {}
    for lam in _partitions(d):
        row = {}
        for mu in _partitions(d):
            r = _refinements(lam.parts, mu.parts)
            if r:
                row[mu] = Fraction(r)
        rows[lam] = row
    return rows


def _invert(rows: Mapping[Partition, Row], d: int) -> Dict[Partition, Row]:
    index = list(_partitions(d))
    entries = [[rows[a].get(b, Fraction(0)) for b in index] for a in index]
    matrix = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in entries])
    inverse = matrix.inv()
    result = {}
    for i, a in enumerate(index):
        row = {}
        for j, b in enumerate(index):
            entry = inverse[i, j]
            if entry != 0:
                row[b] = Fraction(int(entry.p), int(entry.q))
        result[a] = row
    return result


@functools.lru_cache(maxsize=None)
def _complete_one_part(n: int) -> Row:
    """h_n = Σ_{ρ ⊢ n} p_ρ / z_ρ."""
    return {rho: Fraction(1, z_lambda(rho)) for rho in _partitions(n)}


def _complete_in_power_sums(lam: Partition) -> Row:
    row: Dict[Partition, Fraction] = {Partition(()): Fraction(1)}
    for part in lam.parts:
        expanded: Dict[Partition, Fraction] = {}
        for rho, a in row.items():
            for sigma, b in _complete_one_part(part).items():
                key = merge(rho, sigma)
                expanded[key] = expanded.get(key, Fraction(0)) + a * b
        row = expanded
    return row


def _schur_in_complete(lam: Partition) -> Row:
    """Jacobi-Trudi: s_λ = det(h_{λ_i - i + j})."""
    length = len(lam)
    row: Dict[Partition, Fraction] = {}
    for perm in itertools.permutations(range(length)):
        parts = [lam[i] - i + perm[i] for i in range(length)]
        if any(p < 0 for p in parts):
            continue
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        key = Partition(tuple(sorted((p for p in parts if p), reverse=True)))
        row[key] = row.get(key, Fraction(0)) + (-1) ** inversions
    return {key: c for key, c in row.items() if c}


def _compose(first: Row, second: Mapping[Partition, Row]) -> Row:
    result: Dict[Partition, Fraction] = {}
    for mid, a in first.items():
        for target, b in second[mid].items():
            result[target] = result.get(target, Fraction(0)) + a * b
    return {key: c for key, c in result.items() if c}


@functools.lru_cache(maxsize=None)
def _to_power_sums(basis: str, d: int) -> Dict[Partition, Row]:
    if basis == "p":
        return _identity(d)
    if basis == "m":
        return _invert(_power_sums_in_monomials(d), d)
    complete = {lam: _complete_in_power_sums(lam) for lam in _partitions(d)}
    if basis == "h":
        return complete
    return {lam: _compose(_schur_in_complete(lam), complete) for lam in _partitions(d)}


@functools.lru_cache(maxsize=None)
def transition(source: str, target: str, d: int) -> Dict[Partition, Row]:
    """Rows of the change of basis in degree `d`: ``source_λ = Σ_μ row[μ] target_μ``."""
    for basis in (source, target):
        if basis not in BASES:
            raise ValueError(f"Unknown basis `{basis}`; expected one of {', '.join(BASES)}.")
    if source == target:
        return _identity(d)
    if target == "p":
        return _to_power_sums(source, d)
    if source == "p":
        if target == "m":
            return _power_sums_in_monomials(d)
        return _invert(_to_power_sums(target, d), d)
    from_p = transition("p", target, d)
    return {lam: _compose(row, from_p) for lam, row in _to_power_sums(source, d).items()}


def basis_convert(f: SymFunc, target: str) -> SymFunc:
    """Exact change of basis, factor by factor.

    Raises:
        CutoffExceeded: if a term has a degree above the cutoff of `f`.
    """
    if target not in BASES:
        raise ValueError(f"Unknown basis `{target}`; expected one of {', '.join(BASES)}.")
    if f.basis == target:
        return f
    terms: Dict[Key, Any] = {}
    for key, c in f.terms.items():
        if any(part.size > f.cutoff for part in key):
            raise CutoffExceeded(f"Degree of `{_key_str(key)}` is above the cutoff `{f.cutoff}`.")
        rows = [transition(f.basis, target, part.size)[part].items() for part in key]
        for combination in itertools.product(*rows):
            weight = Fraction(1)
            for _, w in combination:
                weight *= w
            new_key = tuple(part for part, _ in combination)
            value = c * weight
            terms[new_key] = terms[new_key] + value if new_key in terms else value
    return SymFunc(f.k, target, terms, f.cutoff)


def monomial_coefficient(f: SymFunc, *partitions: Partition) -> Any:
    """Coefficient of ``m_{μ¹} ⊗ ... ⊗ m_{μᵏ}`` in `f`, without a full change of basis."""
    key = tuple(partitions)
    if len(key) != f.k:
        raise BasisMismatch(f"Expected {f.k} partitions, found {len(key)}.")
    if f.basis == "m":
        return f.coefficient(*key)
    total: Any = Fraction(0)
    for source, c in f.terms.items():
        if any(a.size != b.size for a, b in zip(source, key)):
            continue
        weight = Fraction(1)
        for a, b in zip(source, key):
            weight *= transition(f.basis, "m", a.size)[a].get(b, Fraction(0))
            if not weight:
                break
        if weight:
            total = total + c * weight
    return total


_DUAL = {("m", "h"), ("h", "m"), ("s", "s")}


def hall_inner(f: SymFunc, g: SymFunc) -> Any:
    """The Hall pairing, extended multiplicatively to k variable sets.

    ``⟨m_λ, h_μ⟩ = δ_λμ`` and ``⟨p_λ, p_μ⟩ = z_λ δ_λμ``; in particular
    ``⟨f, h_μ⟩`` is the coefficient of ``m_μ`` in `f`.

    Raises:
        BasisMismatch: if the two functions live on different numbers of variable sets.
    """
    if not isinstance(f, SymFunc) or not isinstance(g, SymFunc):
        raise BasisMismatch("The Hall pairing is defined between symmetric functions only.")
    if f.k != g.k:
        raise BasisMismatch(f"Cannot pair functions of {f.k} and {g.k} variable sets.")
    if (f.basis, g.basis) in _DUAL:
        pairs = ((c, g.terms[key]) for key, c in f.terms.items() if key in g.terms)
        total: Any = Fraction(0)
        for a, b in pairs:
            total = total + a * b
        return total
    if g.basis == "h":
        total = Fraction(0)
        for key, c in g.terms.items():
            total = total + monomial_coefficient(f, *key) * c
        return total
    a, b = f.to("p").terms, g.to("p").terms
    total = Fraction(0)
    for key, c in a.items():
        if key in b:
            weight = 1
            for part in key:
                weight *= z_lambda(part)
            total = total + c * b[key] * weight
    return total


def principal_specialization(f: SymFunc, m: int, variable: str = "q") -> Any:
    """``f(1, q, ..., q^(m-1))`` for a function of one variable set."""
    if f.k != 1:
        raise BasisMismatch("Principal specialization needs a single variable set.")
    total: Any = constant(0, (variable,))
    for (mu,), c in f.to("m").terms.items():
        if len(mu) > m:
            continue
        exponents: Dict[Tuple[int, ...], int] = {}
        for alpha in multiset_permutations(list(mu.parts) + [0] * (m - len(mu))):
            e = (sum(i * a for i, a in enumerate(alpha)),)
            exponents[e] = exponents.get(e, 0) + 1
        total = total + LaurentPoly.from_terms((variable,), exponents) * c
    return total


@dataclasses.dataclass(frozen=True)
class SymFuncDomain(AdamsDomain):
    """Symmetric functions in `k` variable sets with coefficients in ℚ(`variables`).

    ψ_n sends ``p_j`` to ``p_{nj}`` and raises the coefficient variables to the n-th power.
    """

    k: int = 1
    variables: Tuple[str, ...] = ("z", "w")
    cutoff: int = SYMFUNC_CUTOFF

    def zero(self) -> SymFunc:
        return SymFunc.zero(self.k, self.cutoff)

    def one(self) -> SymFunc:
        return SymFunc.scalar(Fraction(1), self.k, self.cutoff)

    def adams(self, c: SymFunc, n: int) -> SymFunc:
        if not isinstance(c, SymFunc):
            c = self.coerce(c)
        return c.adams(n, RationalDomain(self.variables).adams)

    def invert(self, c: SymFunc) -> SymFunc:
        if not c.is_scalar or c.is_zero:
            raise InverseOfNonUnit(f"`{c}` is not an invertible constant.")
        return SymFunc.scalar(1 / c.scalar_value, self.k, self.cutoff)

    def is_zero(self, c: Any) -> bool:
        return c.is_zero if isinstance(c, SymFunc) else c == 0

    def is_one(self, c: Any) -> bool:
        return c == 1

    def coerce(self, c: Any) -> SymFunc:
        if isinstance(c, SymFunc):
            return c
        return SymFunc.scalar(c, self.k, self.cutoff)


# modified Macdonald polynomials


@dataclasses.dataclass(frozen=True)
class _Diagram:
    """Cells of a diagram in reading order together with the pairs the statistics look at."""

    cells: Tuple[Tuple[int, int], ...]
    below: Tuple[Optional[int], ...]
    arms: Tuple[int, ...]
    legs: Tuple[int, ...]
    attacking: Tuple[Tuple[int, int], ...]


@functools.lru_cache(maxsize=None)
def _diagram(partition: Partition) -> _Diagram:
    # French convention: row 1 at the bottom; reading order is top row first, left to right.
    cells = tuple((i, j) for i in range(len(partition), 0, -1) for j in range(1, partition[i - 1] + 1))
    index = {cell: n for n, cell in enumerate(cells)}
    below = tuple(index.get((i - 1, j)) if i > 1 else None for i, j in cells)
    attacking = []
    for u, (i, j) in enumerate(cells):
        for v, (i2, j2) in enumerate(cells):
            if v <= u:
                continue
            if i2 == i or (i2 == i - 1 and j > j2):
                attacking.append((u, v))
    return _Diagram(
        cells,
        below,
        tuple(partition.arm(c) for c in cells),
        tuple(partition.leg(c) for c in cells),
        tuple(attacking),
    )


def _statistics(diagram: _Diagram, filling: Sequence[int]) -> Tuple[int, int]:
    inversions = sum(1 for u, v in diagram.attacking if filling[u] > filling[v])
    maj = 0
    for u, b in enumerate(diagram.below):
        if b is not None and filling[u] > filling[b]:
            maj += diagram.legs[u] + 1
            inversions -= diagram.arms[u]
    return inversions, maj


_MACDONALD_LOCK = threading.Lock()
_MACDONALD_CACHE: Dict[Partition, Dict[Partition, Dict[Tuple[int, int], int]]] = {}


def macdonald_statistics(partition: Partition, bound: int = MACDONALD_BOUND) -> Mapping[Partition, Mapping]:
    """For each content μ, how many fillings of the diagram have each pair ``(inv, maj)``.

    Raises:
        BoundExceeded: if the partition is larger than `bound`.
    """
    if partition.size > bound:
        raise BoundExceeded(f"Macdonald polynomials are limited to size {bound}, found `{partition}`.")
    cached = _MACDONALD_CACHE.get(partition)
    if cached is not None:
        return cached
    diagram = _diagram(partition)
    table: Dict[Partition, Dict[Tuple[int, int], int]] = {}
    for mu in _partitions(partition.size):
        word = [letter for letter, m in enumerate(mu.parts, start=1) for _ in range(m)]
        counts: Dict[Tuple[int, int], int] = {}
        for filling in multiset_permutations(word):
            stats = _statistics(diagram, filling)
            counts[stats] = counts.get(stats, 0) + 1
        table[mu] = counts
    with _MACDONALD_LOCK:
        return _MACDONALD_CACHE.setdefault(partition, table)


def macdonald_modified(
    partition: Partition, parameters: Tuple[str, str] = ("q", "t"), bound: int = MACDONALD_BOUND
) -> SymFunc:
    """The modified Macdonald polynomial H̃_λ(x; q, t) in the monomial basis.

    Sums ``q^inv t^maj x^content`` over all fillings of the diagram of λ.

    Arguments:
        partition: the shape λ.
        parameters: names of the two parameters.
        bound: largest size accepted.

    Returns:
        SymFunc: one variable set, monomial basis, Laurent polynomial coefficients.
    """
    terms = {
        (mu,): LaurentPoly.from_terms(tuple(parameters), counts)
        for mu, counts in macdonald_statistics(partition, bound).items()
    }
    return SymFunc(1, "m", terms, max(SYMFUNC_CUTOFF, partition.size))
