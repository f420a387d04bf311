"""Row and column decompositions of exponent matrices over the blocks.

For a non-zero row ``p`` of ``A`` with distinct values ``c_1 = 0 < ... < c_m``
let ``I_t`` collect the columns whose entry in row ``p`` is at most ``c_t``
and ``k_t = c_{t+1} - c_t``.  The term

    T(p) = T_{I_1}^k_1 * ... * T_{I_{m-1}}^k_{m-1}

lies below ``A`` and agrees with ``A`` on row ``p``, so ``A`` is the join of
the ``T(p)`` over its non-zero rows.  Transposing gives the column version.
Building ``T(p)`` looks only at row ``p``, which is what lets
:func:`membership_by_decomposition` test arbitrary zero-diagonal matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import (
    Block,
    ExponentMatrix,
    NatMatrix,
    as_exponent,
    as_nat,
    leq,
    odot,
    odot_pow,
    oplus,
    zero,
)
from .errors import DimensionMismatchError, NoBlockError, ZeroRowError

__all__ = [
    "RowProfile",
    "Factor",
    "TropicalExpression",
    "row_profile",
    "term_of_row",
    "term_of_column",
    "row_decomposition",
    "column_decomposition",
    "evaluate",
    "evaluate_term",
    "membership_by_decomposition",
    "find_block_below",
    "is_pure_oplus_of_blocks",
]


@dataclass(frozen=True)
class RowProfile:
    p: int
    values: tuple[int, ...]
    levels: Mapping[int, frozenset]
    cumulative: tuple[frozenset, ...]
    gaps: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.values)

    @property
    def r(self) -> int:
        return self.values[-1]


@dataclass(frozen=True)
class Factor:
    block: Block
    power: int = 1

    def __post_init__(self):
        if not isinstance(self.power, int) or self.power < 1:
            raise ValueError(f"factor power must be a positive integer, got {self.power!r}")

    @property
    def indices(self) -> frozenset:
        return self.block.indices

    def matrix(self) -> ExponentMatrix:
        return odot_pow(self.block.matrix, self.power)

    def transpose(self) -> Factor:
        return Factor(self.block.complement(), self.power)

    def __str__(self):
        return str(self.block) if self.power == 1 else f"{self.block}^{self.power}"


Term = tuple  # tuple[Factor, ...]


@dataclass(frozen=True)
class TropicalExpression:
    """Join of products of powered blocks.

    Equality is structural (same terms, same factor order); use
    :meth:`same_value` to compare what two expressions evaluate to.
    """

    n: int
    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        terms = tuple(tuple(t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        for term in terms:
            if not term:
                raise ValueError("a term must have at least one factor")
            for f in term:
                if f.block.n != self.n:
                    raise DimensionMismatchError(
                        f"block {f.block} has n={f.block.n}, expression has n={self.n}")

    def evaluate(self) -> ExponentMatrix:
        return evaluate(self)

    def same_value(self, other: TropicalExpression) -> bool:
        return self.evaluate() == other.evaluate()

    def transpose(self) -> TropicalExpression:
        return TropicalExpression(self.n, tuple(tuple(f.transpose() for f in t) for t in self.terms))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [[{"indices": sorted(f.indices), "power": f.power} for f in t]
                      for t in self.terms],
        }

    @classmethod
    def from_json(cls, obj: dict) -> TropicalExpression:
        n = obj["n"]
        terms = tuple(tuple(Factor(Block(n, frozenset(f["indices"])), f["power"]) for f in t)
                      for t in obj["terms"])
        return cls(n, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(" * ".join(map(str, t)) for t in self.terms)


def row_profile(a, p: int) -> RowProfile:
    """Level sets, cumulative sets and gaps of row ``p`` (1-based)."""
    a = as_nat(a)
    row = a.row(p)
    values = tuple(sorted(set(row)))
    if len(values) < 2:
        raise ZeroRowError(f"row {p} is zero")
    levels = {c: frozenset(j for j, x in enumerate(row, 1) if x == c) for c in values}
    cumulative = []
    acc = frozenset()
    for c in values[:-1]:
        acc = acc | levels[c]
        cumulative.append(acc)
    gaps = tuple(b - c for c, b in zip(values, values[1:]))
    return RowProfile(p, values, levels, tuple(cumulative), gaps)


def term_of_row(a, p: int) -> Term:
    """The term ``T(p)``; factors in construction order ``I_1 < I_2 < ...``."""
    a = as_nat(a)
    prof = row_profile(a, p)
    return tuple(Factor(Block(a.n, s), k) for s, k in zip(prof.cumulative, prof.gaps))


def term_of_column(a, q: int) -> Term:
    """``S(q)``: the transpose of ``T(q)`` computed on the transposed matrix."""
    a = as_nat(a)
    return tuple(f.transpose() for f in term_of_row(a.transpose(), q))


def evaluate_term(term: Iterable[Factor], n: int) -> ExponentMatrix:
    out = zero(n)
    for f in term:
        out = odot(out, f.matrix())
    return out


def evaluate(e: TropicalExpression) -> ExponentMatrix:
    """Realize blocks, sum within terms, take max across terms; empty -> 0."""
    out = zero(e.n)
    for term in e.terms:
        out = oplus(out, evaluate_term(term, e.n))
    return out


def _nonzero_rows(a: NatMatrix):
    return [p for p in range(1, a.n + 1) if any(a.row(p))]


def row_decomposition(a) -> TropicalExpression:
    """``A`` as the join of ``T(p)`` over its non-zero rows, rows ascending."""
    a = as_exponent(a)
    return TropicalExpression(a.n, tuple(term_of_row(a, p) for p in _nonzero_rows(a)))


def column_decomposition(a) -> TropicalExpression:
    """``A`` as the join of ``S(q)`` over its non-zero columns, columns ascending."""
    a = as_exponent(a)
    at = a.transpose()
    return TropicalExpression(a.n, tuple(term_of_column(a, q) for q in _nonzero_rows(at)))


def membership_by_decomposition(m) -> bool:
    """Exponent-matrix test via ``T(p) <= M`` for every non-zero row.

    Agrees with :func:`expmat.core.is_exponent_matrix` on every zero-diagonal
    non-negative matrix.
    """
    m = as_nat(m)
    for p in _nonzero_rows(m):
        if not leq(evaluate_term(term_of_row(m, p), m.n), m):
            return False
    return True


def find_block_below(a) -> Block:
    """Block ``T_C`` below ``A``, where ``C`` is the zero set of the first non-zero row."""
    a = as_exponent(a)
    rows = _nonzero_rows(a)
    if not rows:
        raise NoBlockError("the zero matrix has no block below it")
    i = rows[0]
    b = Block(a.n, frozenset(j for j, x in enumerate(a.row(i), 1) if x == 0))
    assert leq(b.matrix, a)
    return b


def is_pure_oplus_of_blocks(a) -> bool:
    """True iff every entry is 0 or 1, i.e. the row decomposition needs no products."""
    a = as_exponent(a)
    pure = all(x <= 1 for r in a.rows for x in r)
    if pure:
        for term in row_decomposition(a).terms:
            assert len(term) == 1 and term[0].power == 1, term
    return pure
