"""Convex geometry of polyhedra: support functions, recession and polar cones."""

from .cones import (
    ConvexBody,
    as_cell,
    cone_generators,
    cone_over_embedding,
    extended_pairing,
    gammaHK_check,
    gammaHK_sides,
    interior,
    polar_cone,
    recession_cone,
    support_function,
    vertices,
)
