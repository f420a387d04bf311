import pytest

from oracles import brute_exponent_set, brute_factor_pairs
from expmat import ExponentMatrix
from expmat.core import from_flat
from expmat.errors import BudgetExceededError
from expmat.search import BUDGET_ENV, default_budget, search, search_list


@pytest.mark.parametrize("n,bound", [(2, 3), (3, 1), (3, 2), (4, 1)])
def test_pruned_search_matches_unpruned_filter(n, bound):
    m = n * (n - 1)
    got = [from_flat(n, f).rows for f in search(n, [0] * m, [bound] * m)]
    assert len(got) == len(set(got))
    assert set(got) == brute_exponent_set(n, bound)
    assert got == sorted(got)


def test_lower_bounds_and_max_sum():
    n, m = 3, 6
    lo = [1, 0, 0, 0, 0, 0]
    got = {from_flat(n, f).rows for f in search(n, lo, [2] * m, max_sum=3)}
    want = {r for r in brute_exponent_set(3, 2) if r[0][1] >= 1 and sum(map(sum, r)) <= 3}
    assert got == want


def test_minus_constraint_matches_brute_factorizations():
    a = ExponentMatrix([[0, 2, 1], [1, 0, 1], [2, 2, 0]])
    af = a.flat()
    pairs = set()
    for f in search(3, [0] * 6, af, minus=af):
        g = tuple(x - y for x, y in zip(af, f))
        b, c = from_flat(3, f).rows, from_flat(3, g).rows
        if b != a.rows and c != a.rows:
            pairs.add(frozenset((b, c)))
    assert pairs == brute_factor_pairs(a.rows)


def test_budget_exceeded_raises():
    with pytest.raises(BudgetExceededError):
        list(search(4, [0] * 12, [3] * 12, budget=1000))


def test_parallel_matches_serial():
    m = 12
    serial = search_list(4, [0] * m, [2] * m)
    assert search_list(4, [0] * m, [2] * m, jobs=2) == serial


def test_parallel_budget_is_summed():
    with pytest.raises(BudgetExceededError):
        search_list(4, [0] * 12, [2] * 12, jobs=2, budget=30000)


def test_default_budget_from_env(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "123")
    assert default_budget() == 123
    monkeypatch.delenv(BUDGET_ENV)
    assert default_budget() == 10**7
