"""
Decomposing an exponent matrix into blocks
==========================================

Every exponent matrix is a join of sums of 0/1 block matrices.  This script
walks through the row construction on one row, then decomposes a whole
matrix both by rows and by columns and evaluates the results back.
"""

from expmat import (
    ExponentMatrix,
    NatMatrix,
    block,
    column_decomposition,
    evaluate,
    membership_by_decomposition,
    row_decomposition,
)
from expmat.decompose import row_profile, term_of_row
from expmat.textio import parse_expression

# A block T_I has a 1 in position (i, j) exactly when i is in I and j is not.
print(block({1, 3}, 4))
print()

# One row at a time: the distinct values of a row split the columns into
# level sets, and each jump between consecutive values becomes a power of
# a block.
a = evaluate(parse_expression("T{1,3,4} * T{1,3,4,5}^2 * T{1,3,4,5,6,7,8}^2", 9))
print("row 1:", a.row(1))
prof = row_profile(a, 1)
print("values", prof.values, "gaps", prof.gaps)
print("term:", " * ".join(map(str, term_of_row(a, 1))))
print()

a = ExponentMatrix([[0, 2, 5, 5],
                    [4, 0, 3, 3],
                    [6, 2, 0, 2],
                    [4, 4, 2, 0]])

rows = row_decomposition(a)
cols = column_decomposition(a)
print("by rows:   ", rows)
print("by columns:", cols)

# Both expressions evaluate back to A exactly, with at most n terms each.
assert evaluate(rows) == a and evaluate(cols) == a
print(evaluate(rows))

# Checking membership the slow way: a zero-diagonal matrix is an exponent
# matrix iff each row's block term stays below it.
print(membership_by_decomposition(NatMatrix([[0, 0, 1], [0, 0, 0], [0, 0, 0]])))
