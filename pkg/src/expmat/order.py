"""Strict downsets, maximal elements and chain heights in the order on E_n.

Everything here works on finite truncations: either the set of exponent
matrices entrywise below a given one (always finite) or all exponent matrices
with entries bounded by ``bound``.  Both are closed downward, so downsets
computed inside a truncation are exact.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator

import numpy as np

from .core import (
    ExponentMatrix,
    as_exponent,
    from_flat,
    leq,
    oplus_all,
    zero,
)
from .decompose import find_block_below
from .errors import InvalidMatrixError, TheoremViolationError
from .search import Counter, default_budget, search, search_list

__all__ = [
    "MatrixSet",
    "is_block",
    "enumerate_exponent",
    "strict_downset",
    "max_elements",
    "join_of_max",
    "heights",
    "height",
    "downset_uniqueness_scan",
    "reconstruct_from_downset",
    "gap_conclusions",
    "downset_gap_check",
    "dichotomy_holds",
    "leq_matrix",
]


class MatrixSet:
    """Finite duplicate-free set of same-size matrices, iterated in canonical order."""

    __slots__ = ("n", "_members", "_set")

    def __init__(self, n: int, members: Iterable[ExponentMatrix] = ()):
        self.n = n
        s = set(members)
        for m in s:
            if m.n != n:
                raise InvalidMatrixError(f"member of size {m.n} in a set of {n}x{n} matrices")
        self._set = frozenset(s)
        self._members = tuple(sorted(s, key=lambda m: m.sort_key()))

    @classmethod
    def _sorted(cls, n, members):
        # members already distinct and canonically ordered
        obj = object.__new__(cls)
        obj.n = n
        obj._members = tuple(members)
        obj._set = frozenset(obj._members)
        return obj

    def __iter__(self) -> Iterator[ExponentMatrix]:
        return iter(self._members)

    def __len__(self):
        return len(self._members)

    def __contains__(self, m):
        return m in self._set

    def __getitem__(self, k):
        return self._members[k]

    def __eq__(self, other):
        if isinstance(other, MatrixSet):
            return self.n == other.n and self._set == other._set
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self._set))

    def __repr__(self):
        return f"MatrixSet(n={self.n}, size={len(self)})"

    def as_array(self) -> np.ndarray:
        """Members stacked as an ``(len, n, n)`` integer array."""
        if not self._members:
            return np.zeros((0, self.n, self.n), dtype=np.int64)
        return np.array([m.rows for m in self._members], dtype=np.int64)


def is_block(a) -> bool:
    a = as_exponent(a)
    if a.is_zero():
        return False
    return find_block_below(a).matrix == a


def _flats_to_set(n, flats) -> MatrixSet:
    return MatrixSet._sorted(n, (from_flat(n, f) for f in flats))


def enumerate_exponent(n: int, bound: int, budget: int | None = None, jobs: int = 1) -> MatrixSet:
    """All exponent matrices of size ``n`` with every entry at most ``bound``."""
    if n < 1 or bound < 0:
        raise ValueError(f"need n >= 1 and bound >= 0, got n={n}, bound={bound}")
    m = n * (n - 1)
    flats = search_list(n, [0] * m, [bound] * m, budget=budget, jobs=jobs)
    return _flats_to_set(n, flats)


def strict_downset(a, budget: int | None = None) -> MatrixSet:
    """All exponent matrices ``B`` with ``B <= A`` and ``B != A``."""
    a = as_exponent(a)
    top = a.flat()
    flats = [f for f in search(a.n, [0] * len(top), top, budget=budget) if f != top]
    return _flats_to_set(a.n, flats)


def leq_matrix(xs: np.ndarray, ys: np.ndarray | None = None, chunk: int = 512) -> np.ndarray:
    """``L[b, a] = xs[b] <= ys[a]`` entrywise, for flattened matrices."""
    ys = xs if ys is None else ys
    out = np.empty((len(xs), len(ys)), dtype=bool)
    for s in range(0, len(xs), chunk):
        out[s:s + chunk] = np.all(xs[s:s + chunk, None, :] <= ys[None, :, :], axis=2)
    return out


def max_elements(s: MatrixSet) -> MatrixSet:
    """Members not strictly below another member."""
    members = sorted(s, key=lambda m: (-sum(map(sum, m.rows)), m.sort_key()))
    maxima: list[ExponentMatrix] = []
    for m in members:
        # anything strictly above m has a larger entry sum, so it was seen
        # already and lies below one of the maxima found so far
        if not any(leq(m, mx) for mx in maxima):
            maxima.append(m)
    return MatrixSet(s.n, maxima)


def join_of_max(s: MatrixSet) -> ExponentMatrix:
    return oplus_all(max_elements(s), n=s.n)


def heights(universe: MatrixSet) -> dict:
    """Height of every member of a downward-closed set.

    Height counts the longest chain of non-zero matrices ending at the
    member, so blocks have height 1 and the zero matrix height 0.
    """
    mats = list(universe)
    if not mats:
        return {}
    x = np.array([m.flat() for m in mats], dtype=np.int64).reshape(len(mats), -1)
    sums = x.sum(axis=1)
    order = np.argsort(sums, kind="stable")
    x = x[order]
    sums = sums[order]
    h = np.zeros(len(mats), dtype=np.int64)
    for k in range(len(mats)):
        if sums[k] == 0:
            continue
        # strictly below => strictly smaller entry sum
        prior = np.searchsorted(sums, sums[k], side="left")
        if prior:
            below = np.all(x[:prior] <= x[k], axis=1)
            h[k] = 1 + (h[:prior][below].max() if below.any() else 0)
        else:
            h[k] = 1
    return {mats[order[k]]: int(h[k]) for k in range(len(mats))}


def height(a, budget: int | None = None) -> int:
    a = as_exponent(a)
    down = strict_downset(a, budget=budget)
    return heights(MatrixSet(a.n, list(down) + [a]))[a]


def _downset_keys(universe: MatrixSet) -> list[bytes]:
    x = np.array([m.flat() for m in universe], dtype=np.int64).reshape(len(universe), -1)
    keys = []
    for s in range(0, len(x), 256):
        block = np.all(x[None, :, :] <= x[s:s + 256, None, :], axis=2)  # [a, b]: b <= a
        for r, a in enumerate(range(s, min(s + 256, len(x)))):
            row = block[r].copy()
            row[a] = False
            keys.append(np.packbits(row).tobytes())
    return keys


def downset_uniqueness_scan(n: int, bound: int, budget: int | None = None,
                            jobs: int = 1) -> list[tuple[ExponentMatrix, ExponentMatrix]]:
    """Pairs ``A != B`` in the truncation, ``A`` not a block, with equal strict downsets.

    A correct implementation of a correct theorem returns ``[]``.
    """
    universe = enumerate_exponent(n, bound, budget=budget, jobs=jobs)
    groups = defaultdict(list)
    for m, key in zip(universe, _downset_keys(universe)):
        groups[key].append(m)
    bad = []
    for members in groups.values():
        if len(members) < 2:
            continue
        for a in members:
            if is_block(a):
                continue
            bad.extend((a, b) for b in members if b != a)
    return bad


def _has_other_below(a: ExponentMatrix, top: ExponentMatrix, counter: Counter) -> bool:
    """Is there ``B <= a``, ``B != a``, with ``B`` not below ``top``?"""
    af = a.flat()
    tf = top.flat()
    for f in search(a.n, [0] * len(af), af, counter=counter):
        if f != af and any(x > y for x, y in zip(f, tf)):
            return True
    return False


def reconstruct_from_downset(d: MatrixSet, n: int, bound: int,
                             budget: int | None = None) -> ExponentMatrix | None:
    """The unique non-block matrix (entries at most ``bound``) whose strict downset is ``d``.

    Returns ``None`` when no such matrix exists in the truncation; raises
    ``TheoremViolationError`` if two do.
    """
    budget = default_budget() if budget is None else budget
    if len(d) == 0:
        return zero(n)
    maxima = max_elements(d)
    j = oplus_all(maxima, n=n)
    if j not in d and not is_block(j):
        # every member of d lies below j, so the downsets agree iff the sizes do
        jf = j.flat()
        size = sum(1 for f in search(n, [0] * len(jf), jf, budget=budget) if f != jf)
        if size == len(d):
            return j
    if len(maxima) != 1:
        return None
    (top,) = maxima
    # A must cover the single maximal element; search upward from it
    counter = Counter(budget)
    m = n * (n - 1)
    found = []
    tf = top.flat()
    covers: list[tuple[int, ...]] = []
    cands = sorted(search(n, tf, [bound] * m, counter=counter), key=lambda f: (sum(f), f))
    for f in cands:
        if f == tf:
            continue
        if any(all(c <= x for c, x in zip(cv, f)) for cv in covers):
            continue
        covers.append(f)
        a = from_flat(n, f)
        if is_block(a):
            continue
        if not _has_other_below(a, top, counter):
            found.append(a)
    if len(found) > 1:
        raise TheoremViolationError(
            f"{len(found)} non-block matrices share the downset: {found[:2]}")
    return found[0] if found else None


def gap_conclusions(a, b) -> dict[str, bool]:
    """Evaluate the three entrywise conclusions for the pair ``(A, B)``
    without checking any hypothesis.

    ``excess_is_one``: wherever one exceeds the other, by exactly 1.
    ``excess_at_max``: an excess entry equals the overall maximum ``m`` of the
    larger matrix and the smaller one has ``m - 1`` there.
    ``same_zeros``: both have zeros in the same places.
    """
    a = as_exponent(a)
    b = as_exponent(b)
    ma = max(map(max, a.rows))
    mb = max(map(max, b.rows))
    one = at_max = zeros = True
    for ra, rb in zip(a.rows, b.rows):
        for x, y in zip(ra, rb):
            if x > y:
                one &= x == y + 1
                at_max &= x == ma and y == ma - 1
            elif y > x:
                one &= y == x + 1
                at_max &= y == mb and x == mb - 1
            zeros &= (x == 0) == (y == 0)
    return {"excess_is_one": one, "excess_at_max": at_max, "same_zeros": zeros}


def downset_gap_check(a, b, budget: int | None = None) -> bool:
    """Check the three gap conclusions for non-blocks with equal strict
    downsets and a single maximal element each.

    Raises ``ValueError`` if the hypothesis does not hold.
    """
    a = as_exponent(a)
    b = as_exponent(b)
    if is_block(a) or is_block(b):
        raise ValueError("both matrices must be non-blocks")
    da = strict_downset(a, budget=budget)
    db = strict_downset(b, budget=budget)
    if da != db:
        raise ValueError("strict downsets differ")
    if len(max_elements(da)) != 1:
        raise ValueError("the strict downset must have exactly one maximal element")
    return all(gap_conclusions(a, b).values())


def dichotomy_holds(a, down: MatrixSet | None = None) -> bool:
    """Either the join of the maximal elements below ``A`` is ``A``, or it is
    itself the single maximal element."""
    a = as_exponent(a)
    if down is None:
        down = strict_downset(a)
    maxima = max_elements(down)
    j = oplus_all(maxima, n=a.n)
    return j == a or (j in maxima and len(maxima) == 1)
