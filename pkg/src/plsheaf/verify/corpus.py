"""Fixed objects, cones and convex bodies the scenarios are built from."""

from __future__ import annotations

from fractions import Fraction

from ..exactgeom.sets import LE, LT, AffineConstraint, Cell, PLSet
from ..sheafobj.objects import ConstructibleObject, constant, dsum


def cone_cell(rows, strict: bool = False) -> Cell:
    """{x : r . x <= 0 for every row} (or < 0)."""
    n = len(rows[0])
    return Cell(n, [AffineConstraint(r, 0, LT if strict else LE) for r in rows])


# Proper convex cones as closed rows; the open versions use the same rows strictly.
CONES = {
    "dim1": [(-1,)],
    "dim2": [(-1, 0), (0, -1)],
    "dim2-wedge": [(2, -1), (-2, -1)],
    "dim3": [(-1, 0, 0), (0, -1, 0), (0, 0, -1)],
    "dim3-square": [(1, 0, -1), (-1, 0, -1), (0, 1, -1), (0, -1, -1)],
    "dim3-pentagon": [(1, 0, -1), (-1, 0, -1), (0, 1, -1), (0, -1, -1), (1, 1, -1)],
}


def _obj(dim, *texts, shift=0, rank=1) -> ConstructibleObject:
    return constant(PLSet.parse(dim, *texts), shift, rank)


def corpus() -> dict[str, tuple[ConstructibleObject, bool]]:
    """name -> (object, is conic)."""
    return {
        "interval": (_obj(1, "x1 >= 0; x1 <= 1"), False),
        "halfline-closed": (_obj(1, "x1 >= 0"), True),
        "halfline-open": (_obj(1, "x1 > 0"), True),
        "open-interval": (_obj(1, "x1 > -1; x1 < 2"), False),
        "origin": (constant(PLSet.point([0])), True),
        "halfopen": (_obj(1, "x1 >= 0; x1 < 1"), False),
        "sum-shifted": (dsum(_obj(1, "x1 >= -1; x1 <= 1"), constant(PLSet.point([2]), 1)), False),
        "square": (_obj(2, "x1 >= 0; x1 <= 1; x2 >= 0; x2 <= 1"), False),
        "quadrant": (_obj(2, "x1 >= 0; x2 >= 0"), True),
        "open-triangle": (_obj(2, "x1 > 0; x2 > 0; x1 + x2 < 1"), False),
        "mixed": (dsum(_obj(2, "x1 >= 0", shift=-1), constant(PLSet.point([1, 1]), rank=2)), False),
        "open-wedge": (_obj(2, "x2 - x1 > 0; x2 + x1 > 0"), True),
        "line": (_obj(2, "x2 = 0"), True),
        "v-shape": (_obj(2, "x2 >= x1; x2 >= -x1", "x2 = 0"), True),
    }


def _body(dim, *texts) -> PLSet:
    return PLSet.parse(dim, *texts)


# Closed convex bodies without affine lines.
CLOSED_BODIES = {
    "box": _body(2, "x1 >= 0; x1 <= 1; x2 >= 0; x2 <= 1"),
    "simplex": _body(2, "x1 >= 0; x2 >= 0; x1 + x2 <= 1"),
    "shifted-orthant": _body(2, "x1 >= 1; x2 >= -1"),
    "slab": _body(2, "x1 >= 0; x1 <= 1; x2 >= 0"),
    "point": PLSet.point([Fraction(1), Fraction(-1, 2)]),
    "segment": _body(2, "x1 = x2; x1 >= 0; x1 <= 1"),
    "interval": _body(1, "x1 >= 0; x1 <= 1"),
}

# Open convex bodies.
OPEN_BODIES = {
    "box": _body(2, "x1 > 0; x1 < 1; x2 > 0; x2 < 1"),
    "simplex": _body(2, "x1 > 0; x2 > 0; x1 + x2 < 1"),
    "halfline": _body(1, "x1 > 1"),
}
