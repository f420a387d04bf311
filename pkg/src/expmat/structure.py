"""Special families, the odot-irreducibility oracle and finite checks of the
facts behind the automorphism classification.

The automorphism groups themselves concern an infinite algebra and are not
computed; what is checked here is everything the argument needs that can be
decided on finitely many matrices.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .core import (
    Block,
    ExponentMatrix,
    GroupElement,
    act,
    all_blocks,
    as_exponent,
    block,
    from_flat,
    group_elements,
    is_exponent_matrix,
    leq,
    odot,
    odot_all,
    odot_pow,
    oplus,
    oplus_all,
    uniform_u,
    zero,
)
from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    ImproperSubsetError,
    TheoremViolationError,
)
from .order import MatrixSet
from .search import Counter, search

__all__ = [
    "family",
    "all_family_matrices",
    "row_type_blocks",
    "column_type_blocks",
    "odot_factorizations",
    "is_odot_irreducible",
    "min_entry_sum_elements",
    "block_join_solutions",
    "proper_solutions",
    "has_at_most_one_proper_solution_everywhere",
    "check_family_identity",
    "unique_block_from_join_conditions",
    "act_array",
    "verify_action_automorphism",
    "orbit",
    "orbit_sum",
    "acts_faithfully_on_blocks",
    "MAX_GROUP_ORDER",
]

MAX_GROUP_ORDER = 2 * math.factorial(8)


def _check_pair(i, j, n):
    if n < 3:
        raise ValueError(f"families need n >= 3, got {n}")
    if i == j:
        raise ValueError(f"indices must differ, got i = j = {i}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"indices ({i}, {j}) out of range 1..{n}")


def family(kind: str, i: int, j: int, n: int) -> ExponentMatrix:
    """``A_ij``, ``L_ij`` or ``C_ij`` (``kind`` is ``"A"``, ``"L"`` or ``"C"``)."""
    _check_pair(i, j, n)
    full = set(range(1, n + 1))
    if kind == "A":
        return oplus(block({i}, n), block(full - {j}, n))
    if kind == "L":
        return oplus(block({i, j}, n), block({j}, n))
    if kind == "C":
        return oplus(block(full - {i, j}, n), block(full - {i}, n))
    raise ValueError(f"unknown family kind {kind!r}")


def all_family_matrices(n: int, kinds: str = "ALC") -> list[ExponentMatrix]:
    return [family(k, i, j, n) for k in kinds
            for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def row_type_blocks(n: int) -> list[ExponentMatrix]:
    """``T_{i}`` for every i."""
    return [block({i}, n) for i in range(1, n + 1)]


def column_type_blocks(n: int) -> list[ExponentMatrix]:
    """``T_{i}^c`` for every i."""
    full = set(range(1, n + 1))
    return [block(full - {i}, n) for i in range(1, n + 1)]


def _factor_search(a: ExponentMatrix, budget):
    af = a.flat()
    return search(a.n, [0] * len(af), af, minus=af, budget=budget)


def odot_factorizations(a, budget: int | None = None) -> list[tuple[ExponentMatrix, ExponentMatrix]]:
    """All ``(B, C)`` in E_n with ``B + C == A`` and ``B, C != A``.

    Each unordered pair appears once, with ``B`` first in canonical order.
    Raises ``BudgetExceededError`` when the search is too large.
    """
    a = as_exponent(a)
    af = a.flat()
    zero_f = (0,) * len(af)
    out = []
    for f in _factor_search(a, budget):
        if f == zero_f or f == af:
            continue
        g = tuple(x - y for x, y in zip(af, f))
        if f <= g:
            out.append((from_flat(a.n, f), from_flat(a.n, g)))
    return out


def is_odot_irreducible(a, budget: int | None = None) -> bool:
    a = as_exponent(a)
    af = a.flat()
    zero_f = (0,) * len(af)
    for f in _factor_search(a, budget):
        if f != zero_f and f != af:
            return False
    return True


def min_entry_sum_elements(n: int, bound: int, budget: int | None = None) -> MatrixSet:
    """Non-zero exponent matrices with entries at most ``bound`` whose entry
    sum is as small as possible.

    Exhaustive by iterative deepening on the entry sum: level ``s`` is only
    searched after every smaller level turned out to hold nothing but 0.
    """
    m = n * (n - 1)
    counter = Counter(budget)
    for s in range(1, bound * m + 1):
        found = [f for f in search(n, [0] * m, [bound] * m, max_sum=s, counter=counter) if any(f)]
        if found:
            return MatrixSet(n, (from_flat(n, f) for f in found))
    return MatrixSet(n, ())


def _proper(ix: Iterable[int], n: int, name: str) -> frozenset:
    s = frozenset(ix)
    if not (1 <= len(s) <= n - 1 and all(1 <= i <= n for i in s)):
        raise ImproperSubsetError(f"{name} = {sorted(s)} is not a proper subset of 1..{n}")
    return s


def block_join_solutions(i1: Iterable[int], i2: Iterable[int], n: int) -> list[frozenset]:
    """Every proper ``J`` with ``T_J <= T_I1 | T_I2`` (exhaustive scan)."""
    i1 = _proper(i1, n, "I1")
    i2 = _proper(i2, n, "I2")
    rhs = oplus(block(i1, n), block(i2, n))
    return [b.indices for b in all_blocks(n) if leq(b.matrix, rhs)]


def proper_solutions(i1: Iterable[int], i2: Iterable[int], n: int) -> list[frozenset]:
    i1 = frozenset(i1)
    i2 = frozenset(i2)
    return [j for j in block_join_solutions(i1, i2, n) if j != i1 and j != i2]


def has_at_most_one_proper_solution_everywhere(i1: Iterable[int], n: int) -> bool:
    i1 = _proper(i1, n, "I1")
    return all(len(proper_solutions(i1, b.indices, n)) <= 1 for b in all_blocks(n))


def check_family_identity(i: int, n: int, transpose: bool = False) -> bool:
    """``sum_{k != i} A_ik + T_{i}^c == (n - 2) T_{i} + U``, or the same with
    rows and columns exchanged when ``transpose`` is set."""
    if n < 3 or not 1 <= i <= n:
        raise ValueError(f"need n >= 3 and 1 <= i <= n, got i={i}, n={n}")
    full = set(range(1, n + 1))
    row_i, col_i = block({i}, n), block(full - {i}, n)
    if transpose:
        terms = [oplus(col_i, block({k}, n)) for k in full - {i}]
        lhs = odot(odot_all(terms, n), row_i)
        rhs = odot(odot_pow(col_i, n - 2), uniform_u(n))
    else:
        terms = [family("A", i, k, n) for k in sorted(full - {i})]
        lhs = odot(odot_all(terms, n), col_i)
        rhs = odot(odot_pow(row_i, n - 2), uniform_u(n))
    return lhs == rhs


def unique_block_from_join_conditions(indices: Iterable[int], n: int) -> Block:
    """Recover ``T_I`` as the single block satisfying each of two sets of
    join conditions, one over the ``T_{i}`` and one over the ``T_{i}^c``.

    Raises ``TheoremViolationError`` if either condition set does not have
    exactly the solution ``T_I``.
    """
    idx = _proper(indices, n, "I")
    full = frozenset(range(1, n + 1))
    comp = full - idx

    def rows_join(s):
        return oplus_all((block({i}, n) for i in s), n=n)

    def cols_join(s):
        return oplus_all((block(full - {i}, n) for i in s), n=n)

    top1, top2 = rows_join(idx), cols_join(comp)
    drop1 = [rows_join(idx - {j}) for j in idx]
    drop2 = [cols_join(comp - {j}) for j in comp]
    sol1 = [b for b in all_blocks(n)
            if leq(b.matrix, top1) and not any(leq(b.matrix, d) for d in drop1)]
    sol2 = [b for b in all_blocks(n)
            if leq(b.matrix, top2) and not any(leq(b.matrix, d) for d in drop2)]
    want = Block(n, idx)
    if sol1 != [want] or sol2 != [want]:
        raise TheoremViolationError(
            f"I={sorted(idx)}: first conditions give {[str(b) for b in sol1]}, "
            f"second give {[str(b) for b in sol2]}")
    return want


def act_array(g: GroupElement, x: np.ndarray) -> np.ndarray:
    """The action applied to a stack ``(..., n, n)`` of matrices at once."""
    s = np.asarray(g.perm) - 1
    if g.flip:
        x = np.swapaxes(x, -1, -2)
    return x[..., s, :][..., :, s]


def verify_action_automorphism(g: GroupElement, samples: Sequence[ExponentMatrix]) -> bool:
    """Does ``g`` respect join, sum, order, 0, U and entry sums on all sample pairs?"""
    samples = [as_exponent(s) for s in samples]
    if not samples:
        raise ValueError("need at least one sample")
    n = samples[0].n
    if any(s.n != n for s in samples) or g.n != n:
        raise DimensionMismatchError("samples and group element must share n")
    images = [act(g, s) for s in samples]
    x = np.array([s.rows for s in samples], dtype=np.int64)
    y = np.array([m.rows for m in images], dtype=np.int64)
    if not np.array_equal(act_array(g, x), y):
        return False
    if not all(is_exponent_matrix(m) for m in images):
        return False
    if act(g, zero(n)) != zero(n) or act(g, uniform_u(n)) != uniform_u(n):
        return False
    if not np.array_equal(x.sum(axis=(1, 2)), y.sum(axis=(1, 2))):
        return False
    xa, xb = x[:, None], x[None, :]
    ya, yb = y[:, None], y[None, :]
    if not np.array_equal(act_array(g, np.maximum(xa, xb)), np.maximum(ya, yb)):
        return False
    if not np.array_equal(act_array(g, xa + xb), ya + yb):
        return False
    leq_x = np.all(xa <= xb, axis=(2, 3))
    leq_y = np.all(ya <= yb, axis=(2, 3))
    return bool(np.array_equal(leq_x, leq_y))


def _group(n: int, with_flip: bool):
    order = math.factorial(n) * (2 if with_flip else 1)
    if order > MAX_GROUP_ORDER:
        raise BudgetExceededError(MAX_GROUP_ORDER, f"group of order {order} is too large to enumerate")
    return group_elements(n, with_flip)


def orbit(a, with_flip: bool = True) -> MatrixSet:
    """Orbit of ``A`` under S_n x C_2 (or S_n alone)."""
    a = as_exponent(a)
    return MatrixSet(a.n, (act(g, a) for g in _group(a.n, with_flip)))


def orbit_sum(a) -> ExponentMatrix:
    """Sum of ``sigma . A`` over all ``n!`` permutations, with repetition."""
    a = as_exponent(a)
    return odot_all((act(g, a) for g in _group(a.n, False)), a.n)


def acts_faithfully_on_blocks(n: int) -> bool:
    """Do distinct group elements move the block set differently?"""
    blocks = [b.matrix for b in all_blocks(n)]
    seen = set()
    for g in _group(n, True):
        key = tuple(act(g, b) for b in blocks)
        if key in seen:
            return False
        seen.add(key)
    return True
