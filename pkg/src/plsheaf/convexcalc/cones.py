"""Support functions, recession cones, polar cones and the cone over {s = -1}.

A convex body is a single Cell.  Pairings are matrices B with
<x, y> = x^T B y; the default is the dot product.

Extended values: support functions return a Fraction or math.inf.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Union

from ..exactgeom.linalg import dot, nullspace, primitive, rank, solve, vec
from ..exactgeom.lp import maximize_from
from ..exactgeom.sets import (
    EQ,
    LE,
    LT,
    AffineConstraint,
    Cell,
    PLSet,
    subtract,
)

ConvexBody = Cell
Extended = Union[Fraction, float]


def as_cell(a) -> Cell:
    if isinstance(a, Cell):
        return a
    if isinstance(a, PLSet):
        if len(a.cells) != 1:
            raise ValueError(f"expected a conjunctive (single-cell) body, got {len(a.cells)} cells")
        return a.cells[0]
    raise TypeError(f"expected a Cell or PLSet, got {type(a).__name__}")


def _identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _matrix(pairing, n):
    if pairing is None:
        return _identity(n)
    m = [vec(r) for r in pairing]
    if len(m) != n or any(len(r) != n for r in m):
        raise ValueError(f"pairing must be {n}x{n}")
    return m


def _pair_vector(B, y):
    """The vector c with <x, y> = c . x."""
    return tuple(dot(row, y) for row in B)


def _pair_transpose(B, x):
    """The vector c with <x, y> = c . y."""
    return tuple(dot(x, col) for col in zip(*B))


def _inequalities(cell: Cell):
    """The closure of a cell as A x <= b (equalities doubled)."""
    A, b = [], []
    for c in cell.constraints:
        A.append(c.coeffs)
        b.append(c.rhs)
        if c.rel == EQ:
            A.append(tuple(-x for x in c.coeffs))
            b.append(-c.rhs)
    return A, b


def support_function(a, y, pairing=None) -> Extended:
    """sup over a of <x, y>; math.inf when unbounded."""
    cell = as_cell(a)
    y = vec(y)
    if len(y) != cell.dim:
        raise ValueError("dimension mismatch")
    c = _pair_vector(_matrix(pairing, cell.dim), y)
    A, b = _inequalities(cell)
    res = maximize_from(A, b, c, cell.witness)
    return res.value if res.status == "optimal" else math.inf


def recession_cone(a) -> Cell:
    """{d : A d <= 0} for the closure {A x <= b} of a conjunctive body."""
    cell = as_cell(a)
    cs = [AffineConstraint(c.coeffs, 0, EQ if c.rel == EQ else LE) for c in cell.constraints]
    return Cell(cell.dim, cs)


def interior(a) -> PLSet:
    """Topological interior of a convex cell (empty unless full-dimensional)."""
    cell = as_cell(a)
    if any(c.rel == EQ for c in cell.constraints):
        return PLSet.empty(cell.dim)
    c = Cell.make(cell.dim, [AffineConstraint(k.coeffs, k.rhs, LT) for k in cell.constraints])
    return PLSet(cell.dim, [c] if c else [])


def _primitive_vec(v):
    ints, _ = primitive(tuple(Fraction(x) for x in v), Fraction(0))
    return tuple(Fraction(x) for x in ints)


def _eliminate(v, pivot, f):
    return tuple(x - f * p for x, p in zip(v, pivot))


def cone_generators(cone) -> tuple[list[tuple], list[tuple]]:
    """(lines, rays) of a polyhedral cone {E x = 0, A x <= 0} by double description.

    The cone's closure is used.  Constraints are added one at a time to the
    whole space; a constraint either cuts a line into a ray, or splits the
    rays into positive, zero and negative parts and combines adjacent
    positive/negative pairs.  Adjacency is the combinatorial test: no third
    ray is tight on every constraint tight on both.
    """
    cell = as_cell(cone)
    if any(c.rhs != 0 for c in cell.constraints):
        raise ValueError("not a cone: some constraint has a nonzero right-hand side")
    n = cell.dim
    eqs = [c.coeffs for c in cell.constraints if c.rel == EQ]
    ineqs = [c.coeffs for c in cell.constraints if c.rel != EQ]
    if eqs:
        N, _ = nullspace(eqs, n)
    else:
        N = _identity(n)
    k = len(N)
    rows = [tuple(dot(a, col) for col in N) for a in ineqs]
    rows = [r for r in rows if any(r)]

    lines = [tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)]
    rays: list[tuple] = []
    tight: list[frozenset] = []  # indices of processed rows tight on each ray
    done: list[tuple] = []
    for idx, a in enumerate(rows):
        pivot = next((l for l in lines if dot(a, l) != 0), None)
        if pivot is not None:
            al = dot(a, pivot)
            lines = [_eliminate(line, pivot, dot(a, line) / al) for line in lines if line is not pivot]
            rays = [_eliminate(ray, pivot, dot(a, ray) / al) for ray in rays]
            tight = [t | {idx} for t in tight]
            rays.append(pivot if al < 0 else tuple(-x for x in pivot))
            tight.append(frozenset(range(len(done))))
            done.append(a)
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays, new_tight = [], []
        for i, v in enumerate(vals):
            if v <= 0:
                new_rays.append(rays[i])
                new_tight.append(tight[i] | ({idx} if v == 0 else frozenset()))
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if any(common <= tight[r] for r in range(len(rays)) if r not in (p, q)):
                    continue
                r = tuple(vals[p] * y - vals[q] * x for x, y in zip(rays[p], rays[q]))
                new_rays.append(r)
                new_tight.append(common | {idx})
        rays, tight = new_rays, new_tight
        done.append(a)

    def lift(u):
        return _primitive_vec(tuple(sum((u[j] * N[j][i] for j in range(k)), Fraction(0)) for i in range(n)))

    out_lines = [lift(line) for line in lines]
    out_rays = sorted({lift(r) for r in rays if any(r)})
    return out_lines, out_rays


def polar_cone(cone, pairing=None) -> Cell:
    """{y : <x, y> >= 0 for all x in the cone}, one constraint per generator."""
    cell = as_cell(cone)
    n = cell.dim
    B = _matrix(pairing, n)
    lines, rays = cone_generators(cell)
    cs = []
    for g in lines:
        cs.append(AffineConstraint(_pair_transpose(B, g), 0, EQ))
    for g in rays:
        cs.append(AffineConstraint(tuple(-x for x in _pair_transpose(B, g)), 0, LE))
    return Cell(n, cs)


def cone_over_embedding(a: PLSet) -> PLSet:
    """The cone {(t x, -t) : t > 0, x in a}, cell by cell (homogenize against s = -t)."""
    if isinstance(a, Cell):
        a = PLSet(a.dim, [a])
    n = a.dim
    cells = []
    for cell in a.cells:
        cs = [AffineConstraint(c.coeffs + (c.rhs,), 0, c.rel) for c in cell.constraints]
        cs.append(AffineConstraint((Fraction(0),) * n + (Fraction(1),), 0, LT))
        cells.append(Cell(n + 1, cs, cell.witness + (Fraction(-1),)))
    return PLSet(n + 1, cells)


def extended_pairing(pairing, n):
    """Pairing on V x R: <(x, s), (y, t)> = <x, y> + s t."""
    B = _matrix(pairing, n)
    return [list(row) + [Fraction(0)] for row in B] + [[Fraction(0)] * n + [Fraction(1)]]


def _lineality(cell: Cell):
    rows = [c.coeffs for c in cell.constraints]
    return nullspace(rows, cell.dim)[0] if rows else _identity(cell.dim)


def vertices(a) -> list[tuple]:
    """Vertices of the line-free part a ∩ L^perp (L the lineality space), by subset enumeration."""
    cell = as_cell(a).closure()
    n = cell.dim
    lin = _lineality(cell)
    planes = [(c.coeffs, c.rhs) for c in cell.constraints] + [(tuple(l), Fraction(0)) for l in lin]
    out = set()
    for combo in combinations(planes, n):
        rows = [p for p, _ in combo]
        if rank(rows, n) < n:
            continue
        x = solve(rows, [b for _, b in combo], n)
        if cell.contains(x) and all(dot(l, x) == 0 for l in lin):
            out.add(x)
    return sorted(out)


def gammaHK_sides(a, pairing=None) -> tuple[PLSet, PLSet]:
    """(polar of the closed cone over a, {(y, t) : y in polar(lambda_A), t <= <v, y> for vertices v})."""
    cell = as_cell(a).closure()
    n = cell.dim
    gamma = cone_over_embedding(PLSet(n, [cell])).closure()
    lhs = polar_cone(gamma, extended_pairing(pairing, n))
    B = _matrix(pairing, n)
    lam_polar = polar_cone(recession_cone(cell), B)
    cs = [AffineConstraint(c.coeffs + (Fraction(0),), c.rhs, c.rel) for c in lam_polar.constraints]
    for v in vertices(cell):
        # t - <v, y> <= 0
        cs.append(AffineConstraint(tuple(-x for x in _pair_transpose(B, v)) + (Fraction(1),), 0, LE))
    rhs = Cell(n + 1, cs)
    return PLSet(n + 1, [lhs]), PLSet(n + 1, [rhs])


def gammaHK_check(a, pairing=None, samples: int = 200, seed: int = 0) -> bool:
    """Exact equality of both sides, then a sampling check against the LP support function."""
    cell = as_cell(a).closure()
    lhs, rhs = gammaHK_sides(cell, pairing)
    if subtract(lhs, rhs).cells or subtract(rhs, lhs).cells:
        return False
    rng = random.Random(seed)
    n = cell.dim
    for _ in range(samples):
        y = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n))
        t = Fraction(rng.randint(-20, 20), rng.randint(1, 4))
        s = support_function(cell, tuple(-v for v in y), pairing)
        expected = s != math.inf and t <= -s
        if lhs.contains(y + (t,)) != expected:
            return False
    return True
