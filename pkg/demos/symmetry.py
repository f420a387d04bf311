"""
Irreducible matrices and the symmetric group
============================================

The sum operation has irreducible elements: matrices that are not the sum
of two non-zero exponent matrices.  Blocks are irreducible, and so are three
small families built from pairs of blocks.  Permuting indices (and
optionally transposing) maps irreducibles to irreducibles.
"""

import math

from expmat import GroupElement, act, block, entry_sum, enumerate_exponent, odot_pow, uniform_u
from expmat.structure import (
    family,
    is_odot_irreducible,
    min_entry_sum_elements,
    odot_factorizations,
    orbit,
    orbit_sum,
)

n = 4
t = block({1, 2}, n)
print("T{1,2} irreducible:", is_odot_irreducible(t))
print("T{1,2}^2 irreducible:", is_odot_irreducible(odot_pow(t, 2)))

for kind in "ALC":
    m = family(kind, 1, 2, n)
    print(f"{kind}_12 (entry sum {entry_sum(m)}) irreducible:", is_odot_irreducible(m))

# U, the all-ones-off-diagonal matrix, splits many ways
u = uniform_u(3)
print(len(odot_factorizations(u)), "factorizations of U at n=3")

# The group acts by simultaneous permutation of rows and columns
g = GroupElement((2, 3, 1, 4), flip=True)
print(act(g, t))
print("orbit of T{1,2}:", len(orbit(t)), "matrices")

# Smallest non-zero entry sum: only the single-row and single-column blocks
mins = min_entry_sum_elements(3, 2)
print(len(mins), "minimisers, sums", {entry_sum(m) for m in mins})

# Summing an irreducible matrix over all its permuted copies gives a
# multiple of U, the multiple depending only on its entry sum.
for a in enumerate_exponent(3, 2):
    if not a.is_zero() and is_odot_irreducible(a):
        k = math.factorial(3 - 2) * entry_sum(a)
        assert orbit_sum(a) == odot_pow(u, k)
print("orbit sums check out")
