"""Explicit tables of GL_n(F_q) for small n and prime q.

Matrices are encoded as integers: entry ``(i, j)`` is the base-q digit of
weight ``q^(i*n + j)``. A `GroupTable` holds every invertible matrix, the
inverse and ``σ(g) = (g^T)^(-1)`` as index arrays, and the conjugacy
classes. Class functions are numpy arrays indexed by class.
"""
import dataclasses
import functools
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from charstack.common import ELEMENT_BUDGET, GROUP_BUDGET, BudgetExceeded, NotClassConstant
from charstack.finite_field import FiniteField, finite_field


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x


def _det(matrices: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a stack of square integer matrices, by cofactor expansion."""
    n = matrices.shape[-1]
    if n == 1:
        return matrices[..., 0, 0] % p
    total = np.zeros(matrices.shape[:-2], dtype=np.int64)
    for j in range(n):
        minor = np.delete(matrices[..., 1:, :], j, axis=-1)
        total = (total + (-1) ** j * matrices[..., 0, j] * _det(minor, p)) % p
    return total


def _adjugate(matrices: np.ndarray, p: int) -> np.ndarray:
    n = matrices.shape[-1]
    if n == 1:
        return np.ones_like(matrices)
    adjugate = np.empty_like(matrices)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(matrices, i, axis=-2), j, axis=-1)
            adjugate[..., j, i] = ((-1) ** (i + j) * _det(minor, p)) % p
    return adjugate


def group_order(n: int, q: int) -> int:
    """|GL_n(F_q)| = Π_{i<n} (q^n - q^i)."""
    order = 1
    for i in range(n):
        order *= q ** n - q ** i
    return order


@dataclasses.dataclass(frozen=True, eq=False)
class GroupTable:
    """GL_n(F_q) with its conjugacy classes and the involution σ.

    Attributes:
        matrices: array of shape ``(|G|, n, n)``, in increasing order of encoding.
        codes: encodings of `matrices`.
        index: for every encoding below ``q^(n*n)``, the element index or -1.
        inverse: index of the inverse of each element.
        sigma: index of ``(g^T)^(-1)`` for each element.
        class_of: class index of each element; classes are numbered by their first element.
        class_sizes: number of elements in each class.
    """

    n: int
    field: FiniteField
    matrices: np.ndarray = dataclasses.field(repr=False)
    codes: np.ndarray = dataclasses.field(repr=False)
    index: np.ndarray = dataclasses.field(repr=False)
    inverse: np.ndarray = dataclasses.field(repr=False)
    sigma: np.ndarray = dataclasses.field(repr=False)
    class_of: np.ndarray = dataclasses.field(repr=False)
    class_sizes: np.ndarray = dataclasses.field(repr=False)

    def __post_init__(self):
        assert len(self.codes) == group_order(self.n, self.q), "wrong number of elements"
        assert self.class_sizes.sum() == len(self.codes), "class sizes do not add up"
        assert (self.sigma[self.sigma] == np.arange(len(self.codes))).all(), "σ is not an involution"

    @property
    def q(self) -> int:
        return self.field.p

    @property
    def order(self) -> int:
        return len(self.codes)

    @property
    def num_classes(self) -> int:
        return len(self.class_sizes)

    @functools.cached_property
    def identity(self) -> int:
        return self.element(np.eye(self.n, dtype=np.int64))

    @functools.cached_property
    def class_representatives(self) -> np.ndarray:
        """Smallest element index in each class."""
        reps = np.full(self.num_classes, -1, dtype=np.int64)
        for i in range(self.order - 1, -1, -1):
            reps[self.class_of[i]] = i
        return reps

    def __repr__(self) -> str:
        return f"GroupTable(n={self.n}, q={self.q}, order={self.order}, classes={self.num_classes})"

    # elements

    def encode(self, matrices: np.ndarray) -> np.ndarray:
        weights = self.q ** np.arange(self.n * self.n, dtype=np.int64)
        return (np.asarray(matrices) % self.q).reshape(-1, self.n * self.n) @ weights

    def indices(self, matrices: np.ndarray) -> np.ndarray:
        return self.index[self.encode(matrices)]

    def element(self, matrix: Sequence[Sequence[int]]) -> int:
        """Index of an invertible matrix.

        Raises:
            ValueError: if the matrix is singular or of the wrong shape.
        """
        matrix = np.asarray(matrix, dtype=np.int64)
        if matrix.shape != (self.n, self.n):
            raise ValueError(f"Expected a {self.n}x{self.n} matrix, found shape {matrix.shape}.")
        i = int(self.indices(matrix[None])[0])
        if i < 0:
            raise ValueError(f"Matrix {matrix.tolist()} is not invertible over F_{self.q}.")
        return i

    def diagonal(self, entries: Sequence[int]) -> int:
        return self.element(np.diag(np.asarray(entries, dtype=np.int64) % self.q))

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise products of the elements with indices `a` and `b`."""
        return self.indices(np.matmul(self.matrices[a], self.matrices[b]) % self.q)

    @functools.cached_property
    def multiplication_table(self) -> np.ndarray:
        """``table[a, b]`` is the index of ``a * b``.

        Raises:
            BudgetExceeded: if the group has more than ``ELEMENT_BUDGET`` elements.
        """
        check_element_budget(self)
        rows = [self.multiply(np.full(self.order, a), np.arange(self.order)) for a in range(self.order)]
        return np.stack(rows)

    # class functions

    def indicator(self, c: int) -> np.ndarray:
        function = np.zeros(self.num_classes, dtype=np.int64)
        function[c] = 1
        return function

    def class_function(self, values: np.ndarray) -> np.ndarray:
        """Restrict a function on elements to classes.

        Raises:
            NotClassConstant: if `values` is not constant on some class.
        """
        values = np.asarray(values, dtype=np.int64)
        per_class = values[self.class_representatives]
        mismatch = np.nonzero(values != per_class[self.class_of])[0]
        if len(mismatch):
            i = int(mismatch[0])
            raise NotClassConstant(
                f"Function takes values {values[i]} and {per_class[self.class_of[i]]} on class {self.class_of[i]}."
            )
        return per_class

    @functools.cached_property
    def structure_constants(self) -> np.ndarray:
        """``a[i, j, k] = #{(x, y) in C_i x C_j : x y = h_k}`` for the representative h_k of C_k."""
        constants = np.zeros((self.num_classes,) * 3, dtype=np.int64)
        everything = np.arange(self.order)
        for k, h in enumerate(self.class_representatives):
            # y = x^(-1) h
            y = self.multiply(self.inverse[everything], np.full(self.order, h))
            np.add.at(constants[:, :, k], (self.class_of[everything], self.class_of[y]), 1)
        return constants

    def convolve(self, f: np.ndarray, g: np.ndarray, level: Optional[str] = None) -> np.ndarray:
        """``(f * g)(h) = Σ_{xy=h} f(x) g(y)`` for class functions.

        Arguments:
            level: ``"element"`` (multiplication table) or ``"class"`` (structure
                constants). By default groups up to 500 elements use the table.
        """
        if level is None:
            level = "element" if self.order <= 500 else "class"
        if level == "class":
            return np.einsum("i,j,ijk->k", f, g, self.structure_constants)
        if level != "element":
            raise ValueError(f"Unknown convolution level `{level}`.")
        table = self.multiplication_table
        on_elements = np.zeros(self.order, dtype=np.int64)
        np.add.at(on_elements, table, np.outer(f[self.class_of], g[self.class_of]))
        return self.class_function(on_elements)


def check_element_budget(group: GroupTable):
    if group.order > ELEMENT_BUDGET:
        raise BudgetExceeded(
            f"GL_{group.n}(F_{group.q}) has {group.order} elements, above the element-level budget {ELEMENT_BUDGET}."
        )


def _generators(n: int, field: FiniteField) -> List[np.ndarray]:
    """Elementary transvections and ``diag(g, 1, ..., 1)`` for a generator g: together they generate GL_n."""
    generators = []
    for i in range(n):
        for j in range(n):
            if i != j:
                transvection = np.eye(n, dtype=np.int64)
                transvection[i, j] = 1
                generators.append(transvection)
    scalar = np.eye(n, dtype=np.int64)
    scalar[0, 0] = field.generator
    generators.append(scalar)
    return generators


@functools.lru_cache(maxsize=None)
def build_group(n: int, q: int) -> GroupTable:
    """Enumerate GL_n(F_q) for a prime `q`.

    Raises:
        ValueError: if `q` is not an odd prime or `n` is not positive.
        BudgetExceeded: if |GL_n(F_q)| is above ``GROUP_BUDGET``.
    """
    if n < 1:
        raise ValueError(f"Matrix size must be positive, found `{n}`.")
    if not sympy.isprime(q):
        raise ValueError(f"Group tables are built over prime fields, `{q}` is not prime.")
    order = group_order(n, q)
    if order > GROUP_BUDGET:
        raise BudgetExceeded(f"|GL_{n}(F_{q})| = {order} is above the budget {GROUP_BUDGET}.")
    field = finite_field(q)

    all_codes = np.arange(q ** (n * n), dtype=np.int64)
    weights = q ** np.arange(n * n, dtype=np.int64)
    every = ((all_codes[:, None] // weights) % q).reshape(-1, n, n)
    determinants = _det(every, q)
    invertible = determinants != 0
    codes = all_codes[invertible]
    matrices = every[invertible]
    index = np.full(q ** (n * n), -1, dtype=np.int64)
    index[codes] = np.arange(len(codes))

    def lookup(stack: np.ndarray) -> np.ndarray:
        return index[(stack % q).reshape(-1, n * n) @ weights]

    det_inverse = field.inverse(determinants[invertible])
    inverses = (_adjugate(matrices, q) * det_inverse[:, None, None]) % q
    inverse = lookup(inverses)
    sigma = lookup(np.swapaxes(inverses, -1, -2))

    classes = UnionFind(len(codes))
    for s in _generators(n, field):
        s_inverse = inverses[lookup(s[None])[0]]
        conjugates = lookup(np.matmul(np.matmul(s, matrices) % q, s_inverse))
        for x, y in enumerate(conjugates):
            classes.union(x, int(y))
    roots = np.array([classes.find(x) for x in range(len(codes))])
    first: Dict[int, int] = {}
    class_of = np.empty(len(codes), dtype=np.int64)
    for x, root in enumerate(roots):
        class_of[x] = first.setdefault(int(root), len(first))
    class_sizes = np.bincount(class_of)

    return GroupTable(n, field, matrices, codes, index, inverse, sigma, class_of, class_sizes)


# counting


def eta_counts(group: GroupTable, kind: str) -> np.ndarray:
    """η(y) = #{a : a^2 = y} (``square``) or #{a : a σ(a) = y} (``sigma``), per class.

    Raises:
        NotClassConstant: if the count is not a class function, which signals a bug.
    """
    everything = np.arange(group.order)
    if kind == "square":
        images = group.multiply(everything, everything)
    elif kind == "sigma":
        images = group.multiply(everything, group.sigma)
    else:
        raise ValueError(f"Unknown kind `{kind}`; expected `square` or `sigma`.")
    return group.class_function(np.bincount(images, minlength=group.order))


def rep_count(
    group: GroupTable, epsilon: str, r: int, classes: Sequence[int] = (), level: Optional[str] = None
) -> int:
    """#{(a_1..a_r, x_1..x_k) : E(a_1)...E(a_r) x_1...x_k = 1, x_i in C_i}.

    E is ``a -> a^2`` for ``untwisted`` and ``a -> a σ(a)`` for ``twisted``;
    the count is the value at 1 of the convolution ``η * ... * η * 1_{C_1} * ... * 1_{C_k}``.
    """
    if r < 1:
        raise ValueError(f"`r` must be positive, found `{r}`.")
    kinds = {"untwisted": "square", "twisted": "sigma"}
    if epsilon not in kinds:
        raise ValueError(f"Unknown twist `{epsilon}`; expected `untwisted` or `twisted`.")
    eta = eta_counts(group, kinds[epsilon])
    function = eta
    for _ in range(r - 1):
        function = group.convolve(function, eta, level)
    for c in classes:
        if not 0 <= c < group.num_classes:
            raise ValueError(f"Class index `{c}` out of range for {group}.")
        function = group.convolve(function, group.indicator(c), level)
    return int(function[group.class_of[group.identity]])


def real_class_count(group: GroupTable) -> int:
    """Number of classes C with C^(-1) = C."""
    reps = group.class_representatives
    return int((group.class_of[group.inverse[reps]] == np.arange(group.num_classes)).sum())


def idempotent_count(n: int, q: int) -> int:
    """#{e in Mat_n(F_q) : e^2 = e}, by enumerating all matrices.

    Raises:
        BudgetExceeded: if there are more than ``GROUP_BUDGET`` matrices.
    """
    if q ** (n * n) > GROUP_BUDGET:
        raise BudgetExceeded(f"Mat_{n}(F_{q}) has more than {GROUP_BUDGET} elements.")
    weights = q ** np.arange(n * n, dtype=np.int64)
    every = ((np.arange(q ** (n * n), dtype=np.int64)[:, None] // weights) % q).reshape(-1, n, n)
    squares = np.matmul(every, every) % q
    return int((squares == every).all(axis=(1, 2)).sum())


def correspondence_check(group: GroupTable, h: int) -> Tuple[int, int, bool]:
    """#{(x,z) : x z σ(x) z^(-1) = h} against #{(x,z) : x z x^(-1) z^(-1) = h}.

    Raises:
        BudgetExceeded: above the element-level budget.
    """
    table = group.multiplication_table
    # table[x, z] is xz; the second factor is σ(x) z^(-1) or x^(-1) z^(-1)
    twisted = table[table, table[group.sigma[:, None], group.inverse[None, :]]]
    untwisted = table[table, table[group.inverse[:, None], group.inverse[None, :]]]
    count_a = int((twisted == h).sum())
    count_b = int((untwisted == h).sum())
    return count_a, count_b, count_a == count_b
