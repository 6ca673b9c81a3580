"""Integer partitions, tuples of partitions and hook products."""
import dataclasses
import functools
import itertools
import math
from typing import Iterable, Iterator, List, Tuple

from sympy.utilities.iterables import partitions as _sympy_partitions

from charstack.algebra import LaurentPoly, RationalFunction, constant, symbols
from charstack.common import PARTITION_BOUND, BoundExceeded

Cell = Tuple[int, int]


@dataclasses.dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive parts.

    Cells are ``(i, j)`` with row ``i`` and column ``j``, both starting at 1;
    row 1 is the longest row.
    """

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"`{self.parts}` is not a partition: parts must be positive and weakly decreasing.")
        object.__setattr__(self, "parts", parts)
        assert 2 * self.n + self.size == self.inner, "cached statistics are inconsistent"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"2,1"`` (or ``""`` for the empty partition)."""
        text = text.strip().strip("()")
        if not text:
            return cls(())
        return cls(tuple(sorted((int(p) for p in text.split(",") if p.strip()), reverse=True)))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    @functools.cached_property
    def size(self) -> int:
        return sum(self.parts)

    @functools.cached_property
    def conjugate(self) -> "Partition":
        return Partition(self._conjugate_parts())

    @functools.cached_property
    def n(self) -> int:
        """n(λ) = Σ (i-1) λ_i."""
        return sum(i * p for i, p in enumerate(self.parts))

    @functools.cached_property
    def inner(self) -> int:
        """⟨λ,λ⟩ = Σ (λ'_i)^2."""
        return sum(p * p for p in self._conjugate_parts())

    def _conjugate_parts(self) -> Tuple[int, ...]:
        if not self.parts:
            return ()
        return tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0]))

    @functools.cached_property
    def cells(self) -> Tuple[Cell, ...]:
        return tuple((i + 1, j + 1) for i, p in enumerate(self.parts) for j in range(p))

    def arm(self, cell: Cell) -> int:
        i, j = cell
        return self.parts[i - 1] - j

    def leg(self, cell: Cell) -> int:
        i, j = cell
        return self.conjugate.parts[j - 1] - i

    def hook(self, cell: Cell) -> int:
        return self.arm(cell) + self.leg(cell) + 1

    @functools.cached_property
    def hooks(self) -> Tuple[Tuple[int, int], ...]:
        """(arm, leg) for every cell, in row order."""
        return tuple((self.arm(c), self.leg(c)) for c in self.cells)

    @functools.cached_property
    def multiplicities(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((part, len(list(group))) for part, group in itertools.groupby(self.parts))


@dataclasses.dataclass(frozen=True, order=True)
class PartitionTuple:
    """k partitions of the same size n."""

    components: Tuple[Partition, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("A partition tuple needs at least one component.")
        sizes = {p.size for p in self.components}
        if len(sizes) != 1:
            raise ValueError(f"Components of `{self}` must all have the same size, found sizes {sorted(sizes)}.")

    @classmethod
    def parse(cls, text: str) -> "PartitionTuple":
        """Parse the literal ``"2,1|3"``: components separated by ``|``, parts by commas."""
        return cls(tuple(Partition.parse(chunk) for chunk in text.split("|")))

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return self.components[0].size

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.components)

    def __str__(self) -> str:
        return "|".join(",".join(str(p) for p in c.parts) for c in self.components)


def partitions_of(n: int, bound: int = PARTITION_BOUND) -> List[Partition]:
    """All partitions of `n` in reverse lexicographic order.

    Raises:
        BoundExceeded: if `n` is larger than `bound`.
    """
    if n < 0:
        raise ValueError(f"Cannot partition a negative integer `{n}`.")
    if n > bound:
        raise BoundExceeded(f"Partitions of `{n}` exceed the configured bound `{bound}`.")
    return list(_partitions_of(n))


@functools.lru_cache(maxsize=None)
def _partitions_of(n: int) -> Tuple[Partition, ...]:
    if n == 0:
        return (Partition(()),)
    found = []
    for multiplicities in _sympy_partitions(n):
        parts = [part for part, m in multiplicities.items() for _ in range(m)]
        found.append(tuple(sorted(parts, reverse=True)))
    return tuple(Partition(p) for p in sorted(found, reverse=True))


def partition_tuples(n: int, k: int, bound: int = PARTITION_BOUND) -> List[PartitionTuple]:
    return [PartitionTuple(c) for c in itertools.product(partitions_of(n, bound), repeat=k)]


@functools.lru_cache(maxsize=None)
def hook_polynomial(partition: Partition) -> LaurentPoly:
    """H_λ(q) = Π_cells (q^h - 1)."""
    (q,) = symbols("q")
    result = constant(1, ("q",))
    for cell in partition.cells:
        result = result * (q ** partition.hook(cell) - 1)
    return result


@functools.lru_cache(maxsize=None)
def deformed_hook(r: int, partition: Partition) -> RationalFunction:
    """The (z,w)-deformed hook function with exponent `r`.

    Π_cells (z^(2a+1) - w^(2l+1))^r / ((z^(2a+2) - w^(2l)) (z^(2a) - w^(2l+2)))
    """
    if r < 1:
        raise ValueError(f"The hook exponent `r` must be positive, found `{r}`.")
    z, w = symbols("z w")
    numerator = constant(1, ("z", "w"))
    denominator = constant(1, ("z", "w"))
    for a, leg in partition.hooks:
        numerator = numerator * (z ** (2 * a + 1) - w ** (2 * leg + 1)) ** r
        denominator = denominator * (z ** (2 * a + 2) - w ** (2 * leg)) * (z ** (2 * a) - w ** (2 * leg + 2))
    return numerator / denominator


def z_lambda(partition: Partition) -> int:
    """z_λ = Π_i i^(m_i) m_i!, the centralizer order of a permutation of cycle type λ."""
    result = 1
    for part, m in partition.multiplicities:
        result *= part ** m * math.factorial(m)
    return result


def merge(a: Partition, b: Partition) -> Partition:
    """Union of parts (the product p_a p_b in the power-sum basis)."""
    return Partition(tuple(sorted(a.parts + b.parts, reverse=True)))


def scale(partition: Partition, n: int) -> Partition:
    """Every part multiplied by `n` (the Adams action on power sums)."""
    return Partition(tuple(p * n for p in partition.parts))


def is_all_even(partition: Iterable[int]) -> bool:
    return all(p % 2 == 0 for p in partition)
