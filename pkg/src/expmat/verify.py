"""Property suites run by ``expmat verify``.

Each suite returns a list of :class:`Check` records; a failing check carries
the first counterexample found, formatted for humans.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    GroupElement,
    NatMatrix,
    act,
    all_blocks,
    entry_sum,
    group_elements,
    is_exponent_matrix,
    uniform_u,
)
from .decompose import (
    column_decomposition,
    evaluate,
    membership_by_decomposition,
    row_decomposition,
)
from .order import (
    MatrixSet,
    dichotomy_holds,
    downset_uniqueness_scan,
    enumerate_exponent,
    heights,
    is_block,
)
from .sampling import random_block_combination, random_candidate
from .structure import (
    all_family_matrices,
    block_join_solutions,
    check_family_identity,
    has_at_most_one_proper_solution_everywhere,
    is_odot_irreducible,
    min_entry_sum_elements,
    orbit_sum,
    proper_solutions,
    row_type_blocks,
    column_type_blocks,
    unique_block_from_join_conditions,
    verify_action_automorphism,
)

SUITES = ("decompose", "structure", "automorphism", "downset")
DEFAULT_SEED = 20160101
EXHAUSTIVE_LIMIT = 20000


@dataclass
class Check:
    name: str
    status: str  # PASS, FAIL or SKIP
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "FAIL"

    def line(self) -> str:
        return f"{self.status} {self.name}" + (f": {self.detail}" if self.detail else "")


def _show(m) -> str:
    return "[" + "; ".join(" ".join(map(str, r)) for r in m.rows) + "]"


def _first_failure(name, items, pred, describe=_show, count_label="cases"):
    n = 0
    for x in items:
        n += 1
        if not pred(x):
            return Check(name, "FAIL", describe(x))
    return Check(name, "PASS", f"{n} {count_label}")


def suite_decompose(n, bound, seed, universe=None):
    universe = enumerate_exponent(n, bound) if universe is None else universe
    rng = np.random.default_rng(seed)
    out = []

    def round_trip(a):
        r, c = row_decomposition(a), column_decomposition(a)
        return evaluate(r) == a and evaluate(c) == a and len(r.terms) <= n and len(c.terms) <= n

    out.append(_first_failure("decompose/round-trip-truncation", universe, round_trip,
                              count_label="matrices"))
    rand = [random_block_combination(n, rng) for _ in range(200)]
    out.append(_first_failure("decompose/round-trip-random", rand, round_trip,
                              count_label="matrices"))
    m = n * (n - 1)
    if (bound + 1) ** m <= EXHAUSTIVE_LIMIT:
        cands = (NatMatrix(_fill(n, f)) for f in itertools.product(range(bound + 1), repeat=m))
    else:
        cands = [random_candidate(n, rng, bound) for _ in range(1000)]
    out.append(_first_failure(
        "decompose/membership-equivalence", cands,
        lambda x: membership_by_decomposition(x) == is_exponent_matrix(x), count_label="candidates"))

    def zero_one(a):
        if any(x > 1 for r in a.rows for x in r):
            return True
        return all(len(t) == 1 and t[0].power == 1 for t in row_decomposition(a).terms)

    out.append(_first_failure("decompose/zero-one-terms", universe, zero_one, count_label="matrices"))

    def duality(a):
        c = column_decomposition(a)
        r = row_decomposition(a.transpose())
        return c == r.transpose()

    out.append(_first_failure("decompose/transpose-duality", universe, duality,
                              count_label="matrices"))
    return out


def _fill(n, flat):
    it = iter(flat)
    return [[0 if i == j else next(it) for j in range(n)] for i in range(n)]


def suite_structure(n, bound, seed, universe=None):
    if n < 3:
        return [Check("structure", "SKIP", "needs n >= 3")]
    out = []
    blocks = all_blocks(n)

    def join_lemma(pair):
        b1, b2 = pair
        i1, i2 = b1.indices, b2.indices
        sols = set(block_join_solutions(i1, i2, n))
        props = set(proper_solutions(i1, i2, n))
        ok = props <= {i1 & i2, i1 | i2}
        for s in (i1 & i2, i1 | i2):
            if 1 <= len(s) <= n - 1:
                ok &= s in sols
        return ok

    out.append(_first_failure("structure/block-join-solutions",
                              itertools.product(blocks, repeat=2), join_lemma,
                              lambda p: f"I1={sorted(p[0].indices)} I2={sorted(p[1].indices)}",
                              "pairs"))
    out.append(_first_failure(
        "structure/at-most-one-proper-solution", blocks,
        lambda b: has_at_most_one_proper_solution_everywhere(b.indices, n) == (b.size in (1, n - 1)),
        lambda b: f"I1={sorted(b.indices)}", "index sets"))

    def unique(b):
        try:
            return unique_block_from_join_conditions(b.indices, n) == b
        except Exception:
            return False

    out.append(_first_failure("structure/unique-join-conditions", blocks, unique,
                              lambda b: f"I={sorted(b.indices)}", "index sets"))
    out.append(_first_failure(
        "structure/family-identity", range(1, n + 1),
        lambda i: check_family_identity(i, n) and check_family_identity(i, n, transpose=True),
        lambda i: f"i={i}", "indices"))
    irreducible = all_family_matrices(n) + [b.matrix for b in blocks]
    out.append(_first_failure("structure/families-irreducible", irreducible, is_odot_irreducible,
                              count_label="matrices"))
    lc = MatrixSet(n, row_type_blocks(n) + column_type_blocks(n))
    mins = min_entry_sum_elements(n, n - 1)
    sums = {entry_sum(a) for a in mins}
    ok = mins == lc and sums == {n - 1}
    out.append(Check("structure/min-entry-sum", "PASS" if ok else "FAIL",
                     f"{len(mins)} minimisers with sum {sorted(sums)}"))
    if math.factorial(n) <= 24:
        universe = enumerate_exponent(n, bound) if universe is None else universe
        u = uniform_u(n)

        def orbit_identity(a):
            if not is_odot_irreducible(a):
                return True
            k = math.factorial(n - 2) * entry_sum(a)
            return orbit_sum(a) == k * u

        out.append(_first_failure("structure/orbit-sum", universe, orbit_identity,
                                  count_label="matrices"))
    return out


def suite_automorphism(n, bound, seed, universe=None):
    universe = enumerate_exponent(n, bound) if universe is None else universe
    rng = np.random.default_rng(seed)
    out = []
    if len(universe) <= 200:
        samples = list(universe)
    else:
        pick = rng.choice(len(universe), size=200, replace=False)
        samples = [universe[int(k)] for k in sorted(pick)]
    elems = list(group_elements(n))
    out.append(_first_failure("automorphism/action", elems,
                              lambda g: verify_action_automorphism(g, samples),
                              lambda g: f"perm={g.perm} flip={g.flip}", "group elements"))
    if n >= 3:
        blocks = [b.matrix for b in all_blocks(n)]
        images = {}
        clash = None
        for g in elems:
            key = tuple(act(g, b) for b in blocks)
            if key in images:
                clash = (images[key], g)
                break
            images[key] = g
        if clash:
            out.append(Check("automorphism/faithful", "FAIL",
                             f"{clash[0]} and {clash[1]} act identically on blocks"))
        else:
            out.append(Check("automorphism/faithful", "PASS", f"{len(elems)} distinct actions"))
    else:
        swap = GroupElement((2, 1), False)
        flip = GroupElement.transpose(2)
        out.append(_first_failure("automorphism/n2-swap-is-flip", universe,
                                  lambda a: act(swap, a) == act(flip, a), count_label="matrices"))
    return out


def suite_downset(n, bound, seed, universe=None):
    universe = enumerate_exponent(n, bound) if universe is None else universe
    out = []
    bad = downset_uniqueness_scan(n, bound)
    if bad:
        a, b = bad[0]
        out.append(Check("downset/uniqueness", "FAIL", f"{_show(a)} and {_show(b)}"))
    else:
        out.append(Check("downset/uniqueness", "PASS", f"{len(universe)} matrices"))
    h = heights(universe)
    out.append(_first_failure("downset/height-one-iff-block", universe,
                              lambda a: (h[a] == 1) == is_block(a), count_label="matrices"))
    x = np.array([a.flat() for a in universe], dtype=np.int64).reshape(len(universe), -1)

    def dichotomy(k):
        below = np.all(x <= x[k], axis=1)
        below[k] = False
        down = MatrixSet._sorted(n, [universe[int(j)] for j in np.flatnonzero(below)])
        return dichotomy_holds(universe[k], down)

    out.append(_first_failure("downset/max-join-dichotomy", range(len(universe)), dichotomy,
                              lambda k: _show(universe[k]), "matrices"))
    return out


_RUNNERS = {
    "decompose": suite_decompose,
    "structure": suite_structure,
    "automorphism": suite_automorphism,
    "downset": suite_downset,
}


def run_suites(n: int, bound: int, suite: str = "all", seed: int = DEFAULT_SEED) -> list[Check]:
    names = SUITES if suite == "all" else (suite,)
    universe = enumerate_exponent(n, bound)
    checks = []
    for name in names:
        checks.extend(_RUNNERS[name](n, bound, seed, universe=universe))
    return checks
