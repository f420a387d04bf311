"""Acceptance gate: one test per criterion, each timed against its limit.

Every test records a ``PASS``/``FAIL`` line; the lines are printed in the
terminal summary (see ``conftest.py``) and, with ``-s``, as they happen.
Run just this gate with ``pytest tests/test_acceptance.py``.
"""

import itertools
import math
import time

import numpy as np
import pytest

from goldens import CASES, ROW_TERM_9, expected, run
from oracles import brute_is_exponent
from expmat import (
    ExponentMatrix,
    GroupElement,
    act,
    all_blocks,
    entry_sum,
    group_elements,
    is_exponent_matrix,
    odot,
    odot_pow,
    oplus,
    uniform_u,
    zero,
)
from expmat.core import NatMatrix
from expmat.decompose import (
    column_decomposition,
    evaluate,
    membership_by_decomposition,
    row_decomposition,
    row_profile,
    term_of_row,
)
from expmat.order import (
    MatrixSet,
    dichotomy_holds,
    downset_uniqueness_scan,
    enumerate_exponent,
    heights,
    is_block,
)
from expmat.sampling import random_block_combination, random_candidate
from expmat.structure import (
    all_family_matrices,
    block_join_solutions,
    check_family_identity,
    column_type_blocks,
    has_at_most_one_proper_solution_everywhere,
    is_odot_irreducible,
    min_entry_sum_elements,
    orbit_sum,
    proper_solutions,
    row_type_blocks,
    unique_block_from_join_conditions,
    verify_action_automorphism,
)
from expmat.textio import parse_matrix

SEED = 20160101
RESULTS: list[str] = []

EXAMPLE_A = [[0, 2, 5, 5], [4, 0, 3, 3], [6, 2, 0, 2], [4, 4, 2, 0]]
EXAMPLE_ROW = "T{1}^2 * T{1,2}^3 + T{2}^3 * T{2,3,4} + T{3}^2 * T{2,3,4}^4 + T{4}^2 * T{3,4}^2"
EXAMPLE_COL = ("T{2,3,4}^4 * T{3}^2 + T{1,3,4}^2 * T{4}^2 + T{1,2,4}^2 * T{1,2} * T{1}^2"
               " + T{1,2,3}^2 * T{1,2} * T{1}^2")


def gate(name, limit, check):
    """Run ``check() -> (ok, detail)``, time it, record and assert."""
    t0 = time.perf_counter()
    ok, detail = check()
    dt = time.perf_counter() - t0
    in_time = limit is None or dt < limit
    status = "PASS" if ok and in_time else "FAIL"
    bound = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"{status} {name}: {detail}; {dt:.2f}s{bound}"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert in_time, line


def _row_nine():
    return parse_matrix(run(["eval", "-n", "9", ROW_TERM_9])[1])


def test_n9_row_term():
    def check():
        a = _row_nine()
        row = a.row(1)
        prof = row_profile(a, 1)
        term = term_of_row(a, 1)
        got = " * ".join(str(f) for f in term)
        ok = (row == (0, 5, 0, 0, 1, 3, 3, 3, 5)
              and tuple(prof.values) == (0, 1, 3, 5)
              and tuple(prof.gaps) == (1, 2, 2)
              and got == ROW_TERM_9)
        return ok, f"row {row} -> {got}"
    gate("n=9 row term", 1, check)


def test_example_4x4_decompositions():
    def check():
        a = ExponentMatrix(EXAMPLE_A)
        r, c = row_decomposition(a), column_decomposition(a)
        ok = str(r) == EXAMPLE_ROW and str(c) == EXAMPLE_COL and evaluate(r) == a and evaluate(c) == a
        return ok, f"row = {r}; col = {c}"
    gate("4x4 row/column decompositions", 1, check)


def test_round_trip_random():
    def check():
        rng = np.random.default_rng(SEED)
        bad = 0
        for k in range(1000):
            n = 2 + k % 6
            a = random_block_combination(n, rng, max_entry=8)
            assert max(map(max, a.rows)) <= 8
            r, c = row_decomposition(a), column_decomposition(a)
            if not (evaluate(r) == a and evaluate(c) == a and len(r.terms) <= n and len(c.terms) <= n):
                bad += 1
        return bad == 0, f"1000 matrices, n in 2..7, {bad} failures"
    gate("decomposition round-trip", 10, check)


def test_membership_equivalence():
    def check():
        bad = members = 0
        for f in itertools.product(range(3), repeat=6):
            it = iter(f)
            m = NatMatrix([[0 if i == j else next(it) for j in range(3)] for i in range(3)])
            truth = brute_is_exponent(m.rows)
            members += truth
            bad += not (membership_by_decomposition(m) == is_exponent_matrix(m) == truth)
        rng = np.random.default_rng(SEED)
        rand_members = 0
        for k in range(1000):
            n = 2 + k % 5
            m = random_candidate(n, rng, 5) if k % 2 else random_block_combination(n, rng)
            truth = brute_is_exponent(m.rows)
            rand_members += truth
            bad += not (membership_by_decomposition(m) == is_exponent_matrix(m) == truth)
        return bad == 0, (f"729 exhaustive ({members} members) + 1000 random "
                          f"({rand_members} members), {bad} disagreements")
    gate("membership equivalence", 30, check)


LAWS = {
    "oplus closure": lambda a, b, c: brute_is_exponent(oplus(a, b).rows),
    "odot closure": lambda a, b, c: brute_is_exponent(odot(a, b).rows),
    "oplus associative": lambda a, b, c: oplus(oplus(a, b), c) == oplus(a, oplus(b, c)),
    "odot associative": lambda a, b, c: odot(odot(a, b), c) == odot(a, odot(b, c)),
    "oplus commutative": lambda a, b, c: oplus(a, b) == oplus(b, a),
    "odot commutative": lambda a, b, c: odot(a, b) == odot(b, a),
    "oplus idempotent": lambda a, b, c: oplus(a, a) == a,
    "distributive": lambda a, b, c: odot(a, oplus(b, c)) == oplus(odot(a, b), odot(a, c)),
    "zero neutral": lambda a, b, c: oplus(a, zero(a.n)) == a and odot(a, zero(a.n)) == a,
}


def test_closure_and_laws():
    def check():
        rng = np.random.default_rng(SEED)
        failed = []
        for n in range(2, 6):
            triples = [tuple(random_block_combination(n, rng) for _ in range(3)) for _ in range(1000)]
            for name, law in LAWS.items():
                if not all(law(*t) for t in triples):
                    failed.append(f"{name} at n={n}")
        detail = f"{len(LAWS)} laws x 1000 triples x n in 2..5"
        return not failed, detail + (f", failed: {failed}" if failed else ", zero failures")
    gate("closure and semiring laws", 10, check)


def test_block_join_lemma():
    def check():
        bad = pairs = 0
        for n in (3, 4, 5):
            blocks = all_blocks(n)
            for b1, b2 in itertools.product(blocks, repeat=2):
                pairs += 1
                i1, i2 = b1.indices, b2.indices
                sols = set(block_join_solutions(i1, i2, n))
                ok = set(proper_solutions(i1, i2, n)) <= {i1 & i2, i1 | i2}
                for s in (i1 & i2, i1 | i2):
                    if 1 <= len(s) <= n - 1:
                        ok &= s in sols
                bad += not ok
            for b in blocks:
                bad += has_at_most_one_proper_solution_everywhere(b.indices, n) != (b.size in (1, n - 1))
        return bad == 0, f"{pairs} ordered pairs for n in 3..5, {bad} violations"
    gate("block-join solutions", 60, check)


def test_irreducibility():
    def check():
        bad = []
        count = 0
        for n in (3, 4):
            for a in all_family_matrices(n) + [b.matrix for b in all_blocks(n)]:
                count += 1
                if not is_odot_irreducible(a):
                    bad.append(a)
            for b in all_blocks(n):
                count += 1
                if is_odot_irreducible(odot_pow(b.matrix, 2)):
                    bad.append(odot_pow(b.matrix, 2))
            count += 1
            if is_odot_irreducible(uniform_u(n)):
                bad.append(uniform_u(n))
        return not bad, f"{count} verdicts for n in 3..4, {len(bad)} wrong"
    gate("irreducibility", 60, check)


def test_min_entry_sum():
    def check():
        parts = []
        ok = True
        for n in (3, 4):
            want = MatrixSet(n, row_type_blocks(n) + column_type_blocks(n))
            got = min_entry_sum_elements(n, n - 1)
            # independent route: full enumeration within the same bound
            nonzero = [a for a in enumerate_exponent(n, n - 1) if not a.is_zero()]
            low = min(map(entry_sum, nonzero))
            by_enum = MatrixSet(n, [a for a in nonzero if entry_sum(a) == low])
            ok &= got == want == by_enum and low == n - 1 and len(want) == 2 * n
            parts.append(f"n={n}: {len(got)} minimisers, sum {low}")
        return ok, "; ".join(parts)
    gate("minimal entry sum", 30, check)


def test_automorphism_suite():
    def check():
        problems = []
        for n in (3, 4):
            rng = np.random.default_rng(SEED + n)
            samples = [random_block_combination(n, rng) for _ in range(200)]
            elems = list(group_elements(n))
            assert len(elems) == 2 * math.factorial(n)
            u = uniform_u(n)
            blocks = [b.matrix for b in all_blocks(n)]
            images = set()
            for g in elems:
                if not verify_action_automorphism(g, samples):
                    problems.append(f"action n={n} {g}")
                if act(g, u) != u:
                    problems.append(f"U moved n={n} {g}")
                if any(entry_sum(act(g, s)) != entry_sum(s) for s in samples):
                    problems.append(f"entry sum n={n} {g}")
                images.add(tuple(act(g, b) for b in blocks))
            if len(images) != len(elems):
                problems.append(f"not faithful at n={n}")
            for i in range(1, n + 1):
                if not (check_family_identity(i, n) and check_family_identity(i, n, transpose=True)):
                    problems.append(f"family identity n={n} i={i}")
        swap, flip = GroupElement((2, 1)), GroupElement.transpose(2)
        two = enumerate_exponent(2, 3)
        if any(act(swap, a) != act(flip, a) for a in two):
            problems.append("n=2 swap differs from flip")
        return not problems, (f"36 group elements x 200 samples, faithful at n=3,4, "
                              f"n=2 swap = flip on {len(two)} matrices"
                              + (f"; problems: {problems[:3]}" if problems else ""))
    gate("automorphism suite", 60, check)


def test_unique_solution_conditions():
    def check():
        bad = total = 0
        for n in (3, 4, 5):
            for b in all_blocks(n):
                total += 1
                try:
                    bad += unique_block_from_join_conditions(b.indices, n) != b
                except Exception:
                    bad += 1
        return bad == 0, f"{total} index sets for n in 3..5, {bad} without the unique solution T_I"
    gate("unique-solution conditions", 30, check)


def test_downset_uniqueness():
    def check():
        parts = []
        ok = True
        for n, bound in ((3, 2), (4, 1)):
            universe = enumerate_exponent(n, bound)
            clashes = downset_uniqueness_scan(n, bound)
            h = heights(universe)
            height_bad = sum((h[a] == 1) != is_block(a) for a in universe)
            x = np.array([a.flat() for a in universe], dtype=np.int64)
            dich_bad = 0
            for k, a in enumerate(universe):
                below = np.all(x <= x[k], axis=1)
                below[k] = False
                down = MatrixSet._sorted(n, [universe[int(j)] for j in np.flatnonzero(below)])
                dich_bad += not dichotomy_holds(a, down)
            ok &= not clashes and not height_bad and not dich_bad
            parts.append(f"(n={n}, bound {bound}): {len(universe)} matrices, {len(clashes)} clashes, "
                         f"{height_bad} height mismatches, {dich_bad} dichotomy failures")
        return ok, "; ".join(parts)
    gate("downset uniqueness", 120, check)


def test_orbit_sum():
    def check():
        n = 3
        u = uniform_u(n)
        irreducible = [a for a in enumerate_exponent(n, 2) if not a.is_zero() and is_odot_irreducible(a)]
        bad = [a for a in irreducible
               if orbit_sum(a) != odot_pow(u, math.factorial(n - 2) * entry_sum(a))]
        return not bad, f"{len(irreducible)} irreducible matrices at n=3, {len(bad)} failures"
    gate("orbit-sum identity", 30, check)


def test_cli_goldens():
    def check():
        bad = []
        for argv, code, name in CASES:
            first, second = run(argv), run(argv)
            if first != second or first[0] != code or first[1] != expected(name):
                bad.append(name)
        return not bad, f"{len(CASES)} invocations byte-exact and repeatable" + (f"; bad: {bad}" if bad else "")
    gate("CLI goldens", None, check)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
