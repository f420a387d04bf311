"""Depth-first enumeration of exponent matrices inside entrywise bounds.

Off-diagonal entries are assigned in row-major order.  Whenever an entry
closes a triple ``(i, j, k)`` the triangle condition turns into a bound on
that entry, so the feasible range is computed directly instead of trying
values and rejecting them.  Every assigned value counts as one search node;
exceeding the budget raises ``BudgetExceededError`` rather than returning a
truncated result.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import BudgetExceededError

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "EXPMAT_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_BUDGET


@lru_cache(maxsize=None)
def positions(n: int) -> tuple[tuple[int, int], ...]:
    """Off-diagonal positions, 0-based, row-major."""
    return tuple((i, j) for i in range(n) for j in range(n) if i != j)


@lru_cache(maxsize=None)
def _schedule(n: int):
    """For each position t: triples closed at t, split by the role t plays.

    ``upper[t]`` holds (a, b) with x[t] <= x[a] + x[b] (t is the long side);
    ``lower[t]`` holds (c, b) with x[t] >= x[c] - x[b] (t is a short side).
    """
    pos = {p: t for t, p in enumerate(positions(n))}
    m = len(pos)
    upper = [[] for _ in range(m)]
    lower = [[] for _ in range(m)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) < 3:
                    continue
                a, b, c = pos[i, j], pos[j, k], pos[i, k]
                last = max(a, b, c)
                if last == c:
                    upper[c].append((a, b))
                elif last == a:
                    lower[a].append((c, b))
                else:
                    lower[b].append((c, a))
    return tuple(map(tuple, upper)), tuple(map(tuple, lower))


class Counter:
    """Node counter shared by one search."""

    __slots__ = ("nodes", "budget")

    def __init__(self, budget=None):
        self.nodes = 0
        self.budget = default_budget() if budget is None else budget


def search(n: int, lo: Sequence[int], hi: Sequence[int], *, minus: Sequence[int] | None = None,
           max_sum: int | None = None, counter: Counter | None = None,
           budget: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield flat off-diagonal tuples ``x`` with ``lo <= x <= hi`` satisfying
    the triangle condition, in lexicographic order.

    ``minus``: also require ``minus - x`` to satisfy the triangle condition.
    ``max_sum``: only matrices whose entries sum to at most this.
    """
    upper, lower = _schedule(n)
    m = n * (n - 1)
    if counter is None:
        counter = Counter(budget)
    if m == 0:
        yield ()
        return
    lo = list(lo)
    hi = list(hi)
    if len(lo) != m or len(hi) != m:
        raise ValueError(f"bounds must have {m} entries")
    if any(l > h for l, h in zip(lo, hi)):
        return
    suffix_lo = [0] * (m + 1)
    for t in range(m - 1, -1, -1):
        suffix_lo[t] = suffix_lo[t + 1] + lo[t]
    x = [0] * m
    cx = [0] * m  # minus - x
    prefix = [0] * (m + 1)
    cur = [0] * m
    end = [0] * m
    budget_ = counter.budget

    def bounds(t):
        l, h = lo[t], hi[t]
        for a, b in upper[t]:
            s = x[a] + x[b]
            if s < h:
                h = s
        for c, b in lower[t]:
            d = x[c] - x[b]
            if d > l:
                l = d
        if minus is not None:
            mt = minus[t]
            for a, b in upper[t]:
                d = mt - cx[a] - cx[b]
                if d > l:
                    l = d
            for c, b in lower[t]:
                d = mt - cx[c] + cx[b]
                if d < h:
                    h = d
        if max_sum is not None:
            d = max_sum - prefix[t] - suffix_lo[t + 1]
            if d < h:
                h = d
        return l, h

    t = 0
    cur[0], end[0] = bounds(0)
    while t >= 0:
        if cur[t] > end[t]:
            t -= 1
            if t >= 0:
                cur[t] += 1
            continue
        v = cur[t]
        x[t] = v
        if minus is not None:
            cx[t] = minus[t] - v
        prefix[t + 1] = prefix[t] + v
        counter.nodes += 1
        if counter.nodes > budget_:
            raise BudgetExceededError(budget_)
        if t == m - 1:
            yield tuple(x)
            cur[t] += 1
        else:
            t += 1
            cur[t], end[t] = bounds(t)


def _worker(args):
    n, lo, hi, minus, max_sum, budget = args
    counter = Counter(budget)
    out = list(search(n, lo, hi, minus=minus, max_sum=max_sum, counter=counter))
    return out, counter.nodes


def search_list(n: int, lo: Sequence[int], hi: Sequence[int], *, minus=None, max_sum=None,
                budget: int | None = None, jobs: int = 1) -> list[tuple[int, ...]]:
    """``list(search(...))``, optionally split across processes.

    The tree is partitioned by the value of the first entry; results are
    concatenated in that order, so the output is identical for any ``jobs``.
    Each worker runs under the full budget and the summed node count is
    checked afterwards.
    """
    budget = default_budget() if budget is None else budget
    m = n * (n - 1)
    if jobs <= 1 or m == 0 or hi[0] <= lo[0]:
        return list(search(n, lo, hi, minus=minus, max_sum=max_sum, budget=budget))
    tasks = []
    for v in range(lo[0], hi[0] + 1):
        l2 = list(lo)
        h2 = list(hi)
        l2[0] = h2[0] = v
        tasks.append((n, l2, h2, minus, max_sum, budget))
    out = []
    total = 0
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part, nodes in ex.map(_worker, tasks):
            total += nodes
            out.extend(part)
    if total > budget:
        raise BudgetExceededError(budget)
    return out
