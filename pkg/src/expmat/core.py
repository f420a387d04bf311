"""Exponent matrices, blocks and the max-plus operations on them.

Matrices are immutable and store their entries as tuples of Python ints, so
the componentwise sum can never wrap around.  Row, column and block labels are
1-based everywhere a user sees them (``Block`` index sets, permutations, row
numbers passed to the decomposition functions); ``M[i, j]`` item access is
0-based like numpy.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    ImproperSubsetError,
    InvalidMatrixError,
)

__all__ = [
    "NatMatrix",
    "ExponentMatrix",
    "Block",
    "GroupElement",
    "as_nat",
    "as_exponent",
    "zero",
    "oplus",
    "odot",
    "odot_pow",
    "oplus_all",
    "odot_all",
    "leq",
    "is_exponent_matrix",
    "violating_triple",
    "block",
    "all_blocks",
    "entry_sum",
    "uniform_u",
    "act",
    "compose",
    "group_elements",
]


def _coerce_entry(x, r, c):
    if isinstance(x, (bool, np.bool_)):
        raise InvalidMatrixError(f"entry ({r}, {c}) is a boolean, expected an integer")
    if isinstance(x, np.integer):
        x = int(x)
    if not isinstance(x, int):
        raise InvalidMatrixError(f"entry ({r}, {c}) = {x!r} is not an integer")
    if x < 0:
        raise InvalidMatrixError(f"entry ({r}, {c}) = {x} is negative")
    return x


def _normalize(rows) -> tuple[tuple[int, ...], ...]:
    if isinstance(rows, np.ndarray):
        if rows.ndim != 2:
            raise InvalidMatrixError(f"expected a 2-d array, got {rows.ndim}-d")
        rows = rows.tolist()
    rows = [list(r) for r in rows]
    n = len(rows)
    if n == 0:
        raise InvalidMatrixError("matrix is empty")
    out = []
    for r, row in enumerate(rows, 1):
        if len(row) != n:
            raise InvalidMatrixError(
                f"row {r} has {len(row)} entries, expected {n} (matrix must be square)")
        out.append(tuple(_coerce_entry(x, r, c) for c, x in enumerate(row, 1)))
    for i in range(n):
        if out[i][i] != 0:
            raise InvalidMatrixError(f"diagonal entry ({i + 1}, {i + 1}) = {out[i][i]} is not 0")
    return tuple(out)


class NatMatrix:
    """Square matrix of non-negative integers with zero diagonal.

    This is the ambient set in which exponent matrices live; the triangle
    condition is *not* required.
    """

    __slots__ = ("_rows", "__weakref__")

    def __init__(self, rows):
        self._rows = _normalize(rows)

    @classmethod
    def _unchecked(cls, rows):
        # Only for callers that already guarantee every invariant of ``cls``.
        obj = object.__new__(cls)
        obj._rows = rows
        return obj

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def row(self, p: int) -> tuple[int, ...]:
        """Row ``p`` (1-based)."""
        return self._rows[p - 1]

    def column(self, q: int) -> tuple[int, ...]:
        """Column ``q`` (1-based)."""
        return tuple(r[q - 1] for r in self._rows)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def to_numpy(self, dtype=np.int64) -> np.ndarray:
        return np.array(self._rows, dtype=dtype)

    def __array__(self, dtype=None, copy=None):
        return np.array(self._rows, dtype=dtype or np.int64)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def flat(self) -> tuple[int, ...]:
        """Off-diagonal entries in row-major order."""
        n = self.n
        return tuple(self._rows[i][j] for i in range(n) for j in range(n) if i != j)

    def transpose(self):
        return type(self)._unchecked(tuple(zip(*self._rows)))

    @property
    def T(self):
        return self.transpose()

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def sort_key(self):
        """Row-major lexicographic key; the canonical total order on matrices."""
        return self._rows

    def __eq__(self, other):
        if isinstance(other, NatMatrix):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self):
        return hash(self._rows)

    def __le__(self, other):
        return leq(self, other)

    def __lt__(self, other):
        return leq(self, other) and self._rows != other._rows

    def __ge__(self, other):
        return leq(other, self)

    def __gt__(self, other):
        return leq(other, self) and self._rows != other._rows

    def __repr__(self):
        return f"{type(self).__name__}({[list(r) for r in self._rows]})"

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self._rows)


class ExponentMatrix(NatMatrix):
    """An element of the algebra of n x n exponent matrices.

    Construction validates both the zero diagonal and the triangle condition
    ``a[i][j] + a[j][k] >= a[i][k]``.  ``|`` is the componentwise maximum,
    ``+`` the componentwise sum, ``<=`` the entrywise partial order.
    """

    __slots__ = ()

    def __init__(self, rows):
        super().__init__(rows)
        bad = violating_triple(self)
        if bad is not None:
            i, j, k = bad
            raise InvalidMatrixError(
                f"triangle condition fails at ({i}, {j}, {k}): "
                f"a{i}{j} + a{j}{k} = {self[i - 1, j - 1] + self[j - 1, k - 1]} "
                f"< a{i}{k} = {self[i - 1, k - 1]}")

    def __or__(self, other):
        return oplus(self, other)

    def __add__(self, other):
        return odot(self, other)

    def __mul__(self, k):
        if isinstance(k, int):
            return odot_pow(self, k)
        return NotImplemented

    __rmul__ = __mul__


def as_nat(m) -> NatMatrix:
    return m if isinstance(m, NatMatrix) else NatMatrix(m)


def as_exponent(m) -> ExponentMatrix:
    if isinstance(m, ExponentMatrix):
        return m
    if isinstance(m, NatMatrix):
        return ExponentMatrix(m.rows)
    return ExponentMatrix(m)


def zero(n: int) -> ExponentMatrix:
    if n < 1:
        raise InvalidMatrixError(f"dimension must be positive, got {n}")
    return ExponentMatrix._unchecked(tuple((0,) * n for _ in range(n)))


def _same_n(a, b):
    if a.n != b.n:
        raise DimensionMismatchError(f"dimensions differ: {a.n} vs {b.n}")


def _result_type(a, b):
    # both operations preserve the triangle condition
    if isinstance(a, ExponentMatrix) and isinstance(b, ExponentMatrix):
        return ExponentMatrix
    return NatMatrix


def oplus(a: NatMatrix, b: NatMatrix) -> NatMatrix:
    """Componentwise maximum."""
    _same_n(a, b)
    rows = tuple(tuple(map(max, ra, rb)) for ra, rb in zip(a.rows, b.rows))
    return _result_type(a, b)._unchecked(rows)


def odot(a: NatMatrix, b: NatMatrix) -> NatMatrix:
    """Componentwise sum."""
    _same_n(a, b)
    rows = tuple(tuple(map(operator.add, ra, rb)) for ra, rb in zip(a.rows, b.rows))
    return _result_type(a, b)._unchecked(rows)


def odot_pow(a: NatMatrix, k: int) -> NatMatrix:
    """``a`` summed with itself ``k`` times; ``k = 0`` gives the zero matrix."""
    if k < 0:
        raise ValueError(f"power must be non-negative, got {k}")
    rows = tuple(tuple(k * x for x in r) for r in a.rows)
    return type(a)._unchecked(rows)


def oplus_all(mats: Iterable[NatMatrix], n: int | None = None) -> NatMatrix:
    """Join of a collection; the empty join is the zero matrix (needs ``n``)."""
    mats = list(mats)
    if not mats:
        if n is None:
            raise ValueError("empty join needs an explicit dimension")
        return zero(n)
    return reduce(oplus, mats)


def odot_all(mats: Iterable[NatMatrix], n: int | None = None) -> NatMatrix:
    mats = list(mats)
    if not mats:
        if n is None:
            raise ValueError("empty product needs an explicit dimension")
        return zero(n)
    return reduce(odot, mats)


def leq(a: NatMatrix, b: NatMatrix) -> bool:
    """Entrywise ``a <= b``, i.e. ``a | b == b``."""
    _same_n(a, b)
    return all(x <= y for ra, rb in zip(a.rows, b.rows) for x, y in zip(ra, rb))


def _triangle_slack(rows) -> np.ndarray:
    a = np.array(rows, dtype=object if max(map(max, rows)) >= 2**61 else np.int64)
    # slack[i, j, k] = a_ij + a_jk - a_ik.  Triples with a repeated index are
    # automatically non-negative because the diagonal is zero.
    return a[:, :, None] + a[None, :, :] - a[:, None, :]


def violating_triple(m) -> tuple[int, int, int] | None:
    """First (row-major) triple ``(i, j, k)``, 1-based, breaking the triangle
    condition, or ``None``."""
    m = as_nat(m)
    if m.n < 3:
        return None
    bad = np.argwhere(_triangle_slack(m.rows) < 0)
    if len(bad) == 0:
        return None
    i, j, k = (int(x) + 1 for x in bad[0])
    return i, j, k


def is_exponent_matrix(m) -> bool:
    """Direct O(n^3) membership test.

    Raises ``InvalidMatrixError`` if ``m`` is not square with zero diagonal
    and non-negative entries; that is distinct from returning ``False``.
    """
    return violating_triple(m) is None


@dataclass(frozen=True)
class Block:
    """The basis matrix ``T_I``: ones at ``(i, j)`` for ``i in I``, ``j`` not in ``I``."""

    n: int
    indices: frozenset

    def __post_init__(self):
        idx = frozenset(self.indices)
        object.__setattr__(self, "indices", idx)
        if not all(isinstance(i, (int, np.integer)) and 1 <= i <= self.n for i in idx):
            raise ImproperSubsetError(f"indices {sorted(idx)} not all in 1..{self.n}")
        if not 1 <= len(idx) <= self.n - 1:
            raise ImproperSubsetError(
                f"index set {sorted(idx)} is not a proper non-empty subset of 1..{self.n}")

    @cached_property
    def matrix(self) -> ExponentMatrix:
        idx = self.indices
        rows = tuple(
            tuple(1 if (i in idx and j not in idx) else 0 for j in range(1, self.n + 1))
            for i in range(1, self.n + 1))
        return ExponentMatrix._unchecked(rows)

    def complement(self) -> Block:
        return Block(self.n, frozenset(range(1, self.n + 1)) - self.indices)

    @property
    def size(self) -> int:
        return len(self.indices)

    def sorted_indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.indices))

    def __str__(self):
        return "T{" + ",".join(map(str, self.sorted_indices())) + "}"


def block(indices: Iterable[int], n: int) -> ExponentMatrix:
    """Matrix of ``T_I``."""
    return Block(n, frozenset(indices)).matrix


def all_blocks(n: int) -> list[Block]:
    """All ``2**n - 2`` blocks, ordered by size then lexicographically."""
    return [Block(n, frozenset(c))
            for k in range(1, n)
            for c in itertools.combinations(range(1, n + 1), k)]


def entry_sum(a: NatMatrix) -> int:
    return sum(map(sum, a.rows))


def uniform_u(n: int) -> ExponentMatrix:
    """Zero diagonal, every off-diagonal entry 1."""
    if n < 2:
        raise InvalidMatrixError(f"U needs n >= 2, got {n}")
    return ExponentMatrix._unchecked(
        tuple(tuple(0 if i == j else 1 for j in range(n)) for i in range(n)))


@dataclass(frozen=True)
class GroupElement:
    """An element of S_n x C_2 acting on matrices.

    ``perm`` lists the images ``sigma(1), ..., sigma(n)``.  The action sends
    ``M`` to ``(m'[sigma(i)][sigma(j)])`` where ``m'`` is ``M`` transposed when
    ``flip`` is set (the transpose is applied first; the two commute).
    """

    perm: tuple[int, ...]
    flip: bool = False

    def __post_init__(self):
        perm = tuple(int(x) for x in self.perm)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "flip", bool(self.flip))
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{len(perm)}")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> GroupElement:
        return cls(tuple(range(1, n + 1)), False)

    @classmethod
    def transpose(cls, n: int) -> GroupElement:
        return cls(tuple(range(1, n + 1)), True)

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> GroupElement:
        p = list(range(1, n + 1))
        p[i - 1], p[j - 1] = p[j - 1], p[i - 1]
        return cls(tuple(p), False)

    def inverse(self) -> GroupElement:
        inv = [0] * self.n
        for i, s in enumerate(self.perm, 1):
            inv[s - 1] = i
        return GroupElement(tuple(inv), self.flip)

    def __matmul__(self, other):
        return compose(self, other)

    def __call__(self, m):
        return act(self, m)


def act(g: GroupElement, m: NatMatrix) -> NatMatrix:
    if g.n != m.n:
        raise DimensionMismatchError(f"permutation of length {g.n} acting on {m.n}x{m.n} matrix")
    src = m.rows
    if g.flip:
        src = tuple(zip(*src))
    s = [x - 1 for x in g.perm]
    rows = tuple(tuple(src[si][sj] for sj in s) for si in s)
    return type(m)._unchecked(rows)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """Element acting as ``g`` after ``h``: ``act(compose(g, h), M) == act(g, act(h, M))``."""
    if g.n != h.n:
        raise DimensionMismatchError(f"group elements of different degree: {g.n} vs {h.n}")
    perm = tuple(h.perm[s - 1] for s in g.perm)
    return GroupElement(perm, g.flip != h.flip)


def group_elements(n: int, with_flip: bool = True) -> Iterator[GroupElement]:
    """All ``2 * n!`` elements (or ``n!`` without the transpose), identity first."""
    flips = (False, True) if with_flip else (False,)
    for f in flips:
        for p in itertools.permutations(range(1, n + 1)):
            yield GroupElement(p, f)


def transpose(m: NatMatrix) -> NatMatrix:
    return m.transpose()


def from_flat(n: int, flat: Sequence[int], cls=ExponentMatrix):
    """Inverse of ``NatMatrix.flat``; skips validation (kernel use only)."""
    it = iter(flat)
    rows = tuple(tuple(0 if i == j else next(it) for j in range(n)) for i in range(n))
    return cls._unchecked(rows)
