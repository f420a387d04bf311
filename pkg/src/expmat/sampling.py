"""Random exponent matrices and random zero-diagonal candidates for tests and
the ``verify`` suites."""

from __future__ import annotations

import numpy as np

from .core import ExponentMatrix, NatMatrix, all_blocks, odot, odot_pow, oplus, zero


def random_block_combination(n: int, rng: np.random.Generator, max_entry: int = 8,
                             max_terms: int | None = None) -> ExponentMatrix:
    """Join of random products of random blocks.

    Each product uses at most ``max_entry`` block factors counted with
    multiplicity, so no entry exceeds ``max_entry``.
    """
    blocks = all_blocks(n)
    if not blocks:
        return zero(n)
    max_terms = n if max_terms is None else max_terms
    out = zero(n)
    for _ in range(int(rng.integers(1, max_terms + 1))):
        budget = int(rng.integers(1, max_entry + 1))
        term = zero(n)
        while budget > 0:
            b = blocks[int(rng.integers(len(blocks)))].matrix
            k = int(rng.integers(1, budget + 1))
            term = odot(term, odot_pow(b, k))
            budget -= k
        out = oplus(out, term)
    return out


def random_candidate(n: int, rng: np.random.Generator, max_entry: int = 5) -> NatMatrix:
    """Zero-diagonal matrix with independent uniform entries; usually not exponent."""
    x = rng.integers(0, max_entry + 1, size=(n, n))
    np.fill_diagonal(x, 0)
    return NatMatrix(x)
