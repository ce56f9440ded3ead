"""Exact rational geometry: linear algebra, LP, semilinear sets, arrangements."""

from .arrangement import Arrangement, Face, face_cell
from .linalg import det, dot, frac, nullspace, rank, rref, solve, vec
from .lp import find_point, maximize_from
from .sets import (
    EQ,
    LE,
    LT,
    AffineConstraint,
    AffineMap,
    Cell,
    DimensionError,
    EmptyCellError,
    PLSet,
    cell_nonempty,
    complement,
    disjointify,
    embedding_minus_one,
    format_constraint,
    image_injective,
    intersect,
    is_disjoint,
    member,
    negate,
    pairwise_disjoint,
    parse_constraint,
    preimage,
    product,
    subtract,
    translate,
    union,
)
