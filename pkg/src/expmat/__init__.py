"""Max-plus algebra of exponent matrices.

An exponent matrix is a square non-negative integer matrix with zero
diagonal satisfying ``a[i][j] + a[j][k] >= a[i][k]``.  Under componentwise
maximum (join) and componentwise sum these form an idempotent semiring
generated by the 0/1 block matrices ``T_I``.
"""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    Block,
    ExponentMatrix,
    GroupElement,
    NatMatrix,
    act,
    all_blocks,
    block,
    compose,
    entry_sum,
    group_elements,
    is_exponent_matrix,
    leq,
    odot,
    odot_pow,
    oplus,
    uniform_u,
    violating_triple,
    zero,
)
from .decompose import (  # noqa: E402
    Factor,
    RowProfile,
    TropicalExpression,
    column_decomposition,
    evaluate,
    find_block_below,
    is_pure_oplus_of_blocks,
    membership_by_decomposition,
    row_decomposition,
    row_profile,
    term_of_row,
)
from .errors import *  # noqa: E402,F401,F403
from .order import (  # noqa: E402
    MatrixSet,
    enumerate_exponent,
    height,
    max_elements,
    strict_downset,
)
from .textio import parse_expression, parse_matrix  # noqa: E402
