"""Command-line interface.

Exit codes: 0 success (``check``: member), 1 ``check`` non-member or a failed
``verify`` suite, 2 usage or input error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .core import GroupElement, act, as_exponent, violating_triple
from .decompose import column_decomposition, evaluate, row_decomposition
from .errors import BudgetExceededError, ExpMatError
from .order import enumerate_exponent, max_elements, strict_downset
from .search import default_budget
from .structure import odot_factorizations, orbit
from .textio import format_matrices, format_matrix, parse_expression, parse_matrix
from .verify import DEFAULT_SEED, SUITES, run_suites

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _read_matrix(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise _UsageError(f"cannot read {path}: {e.strerror}") from e
    return parse_matrix(text)


def _read_exponent(path):
    return as_exponent(_read_matrix(path))


def cmd_check(args, out):
    m = _read_matrix(args.file)
    bad = violating_triple(m)
    if bad is None:
        out.write("member\n")
        return EXIT_OK
    i, j, k = bad
    a = m.rows
    out.write("non-member\n")
    out.write(f"violating triple {i} {j} {k}: a{i}{j} + a{j}{k} = "
              f"{a[i - 1][j - 1] + a[j - 1][k - 1]} < a{i}{k} = {a[i - 1][k - 1]}\n")
    return EXIT_NO


def cmd_decompose(args, out):
    a = _read_exponent(args.file)
    e = row_decomposition(a) if args.mode == "row" else column_decomposition(a)
    if args.json:
        obj = {"mode": args.mode, **e.to_json()}
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        out.write(str(e) + "\n")
    return EXIT_OK


def cmd_eval(args, out):
    e = parse_expression(args.expr, args.n)
    out.write(format_matrix(evaluate(e)))
    return EXIT_OK


def cmd_downset(args, out):
    a = _read_exponent(args.file)
    d = strict_downset(a, budget=args.budget)
    if args.max_only:
        d = max_elements(d)
    out.write(format_matrices(d))
    return EXIT_OK


def cmd_act(args, out):
    m = _read_matrix(args.file)
    try:
        perm = tuple(int(x) for x in args.perm.split())
        g = GroupElement(perm, args.transpose)
    except ValueError as e:
        raise _UsageError(f"bad --perm: {e}") from e
    out.write(format_matrix(act(g, m)))
    return EXIT_OK


def cmd_orbit(args, out):
    a = _read_exponent(args.file)
    out.write(format_matrices(orbit(a)))
    return EXIT_OK


def cmd_irreducible(args, out):
    a = _read_exponent(args.file)
    pairs = odot_factorizations(a, budget=args.budget)
    if not pairs:
        out.write("irreducible\n")
        return EXIT_OK
    out.write("reducible\n")
    if args.witness:
        b, c = pairs[0]
        out.write(format_matrix(b) + "\n" + format_matrix(c))
    return EXIT_OK


def cmd_enumerate(args, out):
    s = enumerate_exponent(args.n, args.bound, budget=args.budget, jobs=args.jobs)
    if args.count_only:
        out.write(f"{len(s)}\n")
    else:
        out.write(format_matrices(s))
    return EXIT_OK


def cmd_verify(args, out):
    checks = run_suites(args.n, args.bound, args.suite, args.seed)
    for c in checks:
        out.write(c.line() + "\n")
    failed = sum(not c.ok for c in checks)
    out.write("all checks passed\n" if not failed else f"{failed} check(s) failed\n")
    return EXIT_OK if not failed else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="expmat", description="Max-plus algebra of exponent matrices.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def budget(sp):
        sp.add_argument("--budget", type=int, default=default_budget(),
                        help="search node budget (default from EXPMAT_BUDGET or 10^7)")

    sp = sub.add_parser("check", help="test membership in E_n")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("decompose", help="row or column decomposition")
    sp.add_argument("file")
    sp.add_argument("--mode", choices=("row", "col"), default="row")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("eval", help="evaluate a block expression")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("downset", help="strict downset or its maximal elements")
    sp.add_argument("file")
    sp.add_argument("--max-only", action="store_true")
    budget(sp)
    sp.set_defaults(func=cmd_downset)

    sp = sub.add_parser("act", help="apply a permutation and optional transpose")
    sp.add_argument("--perm", required=True, help='images sigma(1) ... sigma(n), e.g. "2 1 3"')
    sp.add_argument("--transpose", action="store_true")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_act)

    sp = sub.add_parser("orbit", help="orbit under S_n x C_2")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("irreducible", help="odot-irreducibility verdict")
    sp.add_argument("file")
    sp.add_argument("--witness", action="store_true")
    budget(sp)
    sp.set_defaults(func=cmd_irreducible)

    sp = sub.add_parser("enumerate", help="all exponent matrices with bounded entries")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    budget(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="run property suites")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--suite", choices=("all",) + SUITES, default="all")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except _UsageError as e:
        err.write(f"expmat: error: {e}\n")
        return EXIT_USAGE
    except BudgetExceededError as e:
        err.write(f"expmat: {e}\n")
        return EXIT_BUDGET
    except ExpMatError as e:
        err.write(f"expmat: error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
