"""
Downsets in the entrywise order
===============================

Below any exponent matrix there are finitely many others.  Apart from the
blocks, a matrix is determined by what lies strictly below it.
"""

from expmat import ExponentMatrix, strict_downset
from expmat.order import (
    downset_uniqueness_scan,
    enumerate_exponent,
    heights,
    is_block,
    join_of_max,
    max_elements,
    reconstruct_from_downset,
)

a = ExponentMatrix([[0, 1, 2],
                    [1, 0, 1],
                    [1, 1, 0]])
down = strict_downset(a)
print(len(down), "matrices strictly below A")

top = max_elements(down)
for m in top:
    print(m, end="\n\n")

# the join of the maximal elements is A itself here
print("join of maxima == A:", join_of_max(down) == a)

# and A comes back from its downset alone
print(reconstruct_from_downset(down, 3, bound=2))

# Height: longest chain of non-zero matrices ending at A.  Height one is
# exactly the blocks.
universe = enumerate_exponent(3, 2)
h = heights(universe)
print("max height at n=3, bound 2:", max(h.values()))
print("height-one == blocks:", all((h[m] == 1) == is_block(m) for m in universe))

# No two distinct non-blocks share a strict downset in this truncation
print("clashes:", downset_uniqueness_scan(3, 2))
