"""Semilinear subsets of Q^n: affine constraints, convex cells and their unions."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .linalg import dot, frac, nullspace, primitive, rref, solve, vec
from .lp import find_point

EQ, LE, LT = "eq", "le", "lt"
RELATIONS = (EQ, LE, LT)


class DimensionError(ValueError):
    pass


class EmptyCellError(ValueError):
    pass


class AffineConstraint:
    """coeffs . x  (rel)  rhs, with rel one of "eq", "le", "lt".

    Stored in primitive integer form (positive rescaling only), and equalities
    additionally with a positive leading coefficient.
    """

    __slots__ = ("coeffs", "rhs", "rel")

    def __init__(self, coeffs, rhs, rel: str):
        if rel not in RELATIONS:
            raise ValueError(f"unknown relation {rel!r}")
        coeffs = vec(coeffs)
        rhs = frac(rhs)
        if any(coeffs):
            ints, r = primitive(coeffs, rhs)
            if rel == EQ and next(c for c in ints if c) < 0:
                ints, r = tuple(-c for c in ints), -r
            coeffs, rhs = tuple(Fraction(c) for c in ints), Fraction(r)
        self.coeffs = coeffs
        self.rhs = rhs
        self.rel = rel

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def is_trivial(self) -> bool:
        return not any(self.coeffs)

    def trivial_value(self) -> bool:
        """Truth value of a constraint with zero coefficients."""
        if self.rel == EQ:
            return self.rhs == 0
        if self.rel == LE:
            return self.rhs >= 0
        return self.rhs > 0

    def holds(self, point) -> bool:
        v = dot(self.coeffs, point)
        if self.rel == EQ:
            return v == self.rhs
        if self.rel == LE:
            return v <= self.rhs
        return v < self.rhs

    def negations(self) -> list["AffineConstraint"]:
        """Constraints whose union is the complement of this one."""
        neg = tuple(-c for c in self.coeffs)
        if self.rel == LE:
            return [AffineConstraint(neg, -self.rhs, LT)]
        if self.rel == LT:
            return [AffineConstraint(neg, -self.rhs, LE)]
        return [AffineConstraint(self.coeffs, self.rhs, LT), AffineConstraint(neg, -self.rhs, LT)]

    def closed(self) -> "AffineConstraint":
        return AffineConstraint(self.coeffs, self.rhs, LE) if self.rel == LT else self

    def hyperplane(self):
        """(canonical integer normal, rhs, orientation) of the bounding hyperplane."""
        ints, r = primitive(self.coeffs, self.rhs)
        lead = next(c for c in ints if c)
        if lead < 0:
            return tuple(-c for c in ints), -r, -1
        return ints, r, 1

    def key(self):
        return (self.coeffs, self.rhs, self.rel)

    def __eq__(self, other):
        return isinstance(other, AffineConstraint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"AffineConstraint({format_constraint(self)!r})"


def format_constraint(c: AffineConstraint) -> str:
    terms = []
    for i, a in enumerate(c.coeffs):
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        body = f"x{i + 1}" if mag == 1 else f"{mag}*x{i + 1}"
        terms.append((sign, body))
    if not terms:
        lhs = "0"
    else:
        first_sign, first = terms[0]
        lhs = ("-" if first_sign == "-" else "") + first
        lhs += "".join(f" {s} {b}" for s, b in terms[1:])
    op = {EQ: "=", LE: "<=", LT: "<"}[c.rel]
    return f"{lhs} {op} {c.rhs}"


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(x(\d+))?")


def _parse_linear(expr: str, dim: int):
    coeffs = [Fraction(0)] * dim
    const = Fraction(0)
    s = expr.replace(" ", "")
    if not s:
        raise ValueError("empty expression")
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {expr!r} at {s[pos:]!r}")
        sign, num, var, idx = m.group(1), m.group(2), m.group(3), m.group(4)
        if num is None and var is None:
            raise ValueError(f"cannot parse {expr!r} at {s[pos:]!r}")
        value = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        if var is not None:
            k = int(idx) - 1
            if not 0 <= k < dim:
                raise DimensionError(f"variable {var} outside dimension {dim}")
            coeffs[k] += value
        else:
            const += value
        pos = m.end()
    return coeffs, const


def parse_constraint(text: str, dim: int) -> AffineConstraint:
    """Parse e.g. "x1 - 2*x2 <= 3/2"; variables are x1..xn."""
    for op, rel, flip in (("<=", LE, False), (">=", LE, True), ("==", EQ, False),
                          ("<", LT, False), (">", LT, True), ("=", EQ, False)):
        if op in text:
            left, right = text.split(op, 1)
            break
    else:
        raise ValueError(f"no relation in {text!r}")
    lc, lk = _parse_linear(left, dim)
    rc, rk = _parse_linear(right, dim)
    coeffs = [a - b for a, b in zip(lc, rc)]
    rhs = rk - lk
    if flip:
        coeffs = [-a for a in coeffs]
        rhs = -rhs
    return AffineConstraint(coeffs, rhs, rel)


def _split(constraints):
    eqs, les, lts = [], [], []
    for c in constraints:
        row = (c.coeffs, c.rhs)
        if c.rel == EQ:
            eqs.append(row)
        elif c.rel == LE:
            les.append(row)
        else:
            lts.append(row)
    return eqs, les, lts


def cell_nonempty(constraints: Sequence[AffineConstraint], dim: Optional[int] = None) -> bool:
    """Exact emptiness test for a conjunction of affine constraints."""
    return _witness(constraints, dim) is not None


def _witness(constraints, dim=None):
    constraints = list(constraints)
    if dim is None:
        if not constraints:
            raise ValueError("dimension required for an empty constraint list")
        dim = constraints[0].dim
    for c in constraints:
        if c.dim != dim:
            raise DimensionError(f"constraint of dimension {c.dim} in ambient dimension {dim}")
    live = []
    for c in constraints:
        if c.is_trivial():
            if not c.trivial_value():
                return None
        else:
            live.append(c)
    eqs, les, lts = _split(live)
    return find_point(eqs, les, lts, dim)


class Cell:
    """A nonempty conjunction of affine constraints (a locally closed convex set)."""

    __slots__ = ("dim", "constraints", "witness", "_hash")

    def __init__(self, dim: int, constraints: Iterable[AffineConstraint] = (), witness=None):
        cs = []
        seen = set()
        for c in constraints:
            if c.dim != dim:
                raise DimensionError(f"constraint of dimension {c.dim} in a cell of dimension {dim}")
            if c.is_trivial():
                if c.trivial_value():
                    continue
                raise EmptyCellError("contradictory constant constraint")
            if c.key() not in seen:
                seen.add(c.key())
                cs.append(c)
        cs.sort(key=lambda c: (c.rel, c.coeffs, c.rhs))
        if witness is None or not all(c.holds(witness) for c in cs):
            witness = _witness(cs, dim)
            if witness is None:
                raise EmptyCellError("cell is empty")
        self.dim = dim
        self.constraints = tuple(cs)
        self.witness = tuple(witness)
        self._hash = hash((dim, tuple(c.key() for c in cs)))

    @classmethod
    def make(cls, dim, constraints=(), witness=None) -> Optional["Cell"]:
        """Like the constructor, but returns None for an empty conjunction."""
        try:
            return cls(dim, constraints, witness)
        except EmptyCellError:
            return None

    @classmethod
    def parse(cls, dim: int, text: str) -> "Cell":
        parts = [p for p in re.split(r"[;,]", text) if p.strip()]
        return cls(dim, [parse_constraint(p, dim) for p in parts])

    def contains(self, point) -> bool:
        if len(point) != self.dim:
            raise DimensionError(f"point of dimension {len(point)} in ambient dimension {self.dim}")
        return all(c.holds(point) for c in self.constraints)

    def closure(self) -> "Cell":
        return Cell(self.dim, [c.closed() for c in self.constraints], self.witness)

    def is_closed(self) -> bool:
        return all(c.rel != LT for c in self.constraints)

    def intersect(self, other: "Cell") -> Optional["Cell"]:
        if other.dim != self.dim:
            raise DimensionError("cells of different dimension")
        return Cell.make(self.dim, self.constraints + other.constraints)

    def __eq__(self, other):
        return isinstance(other, Cell) and self.dim == other.dim and self.constraints == other.constraints

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = "; ".join(format_constraint(c) for c in self.constraints) or "true"
        return f"Cell({self.dim}, {body!r})"


class PLSet:
    """A finite union of cells."""

    __slots__ = ("dim", "cells")

    def __init__(self, dim: int, cells: Iterable[Cell] = ()):
        cells = list(dict.fromkeys(cells))
        for c in cells:
            if c.dim != dim:
                raise DimensionError(f"cell of dimension {c.dim} in a set of dimension {dim}")
        self.dim = dim
        self.cells = tuple(cells)

    @classmethod
    def full(cls, dim):
        return cls(dim, [Cell(dim)])

    @classmethod
    def empty(cls, dim):
        return cls(dim, [])

    @classmethod
    def point(cls, p):
        p = vec(p)
        n = len(p)
        cs = [AffineConstraint([int(i == j) for j in range(n)], p[i], EQ) for i in range(n)]
        return cls(n, [Cell(n, cs, p)])

    @classmethod
    def parse(cls, dim: int, *texts: str) -> "PLSet":
        """One cell per string, constraints separated by ';'."""
        return cls(dim, [Cell.parse(dim, t) for t in texts])

    @classmethod
    def box(cls, lower, upper, strict=False):
        lower, upper = vec(lower), vec(upper)
        n = len(lower)
        rel = LT if strict else LE
        cs = []
        for i in range(n):
            e = [int(i == j) for j in range(n)]
            cs.append(AffineConstraint(e, upper[i], rel))
            cs.append(AffineConstraint([-v for v in e], -lower[i], rel))
        c = Cell.make(n, cs)
        return cls(n, [c] if c else [])

    def is_empty(self) -> bool:
        return not self.cells

    def contains(self, point) -> bool:
        if len(point) != self.dim:
            raise DimensionError(f"point of dimension {len(point)} in ambient dimension {self.dim}")
        point = vec(point)
        return any(c.contains(point) for c in self.cells)

    __contains__ = contains

    def closure(self) -> "PLSet":
        return PLSet(self.dim, [c.closure() for c in self.cells])

    def constraints(self):
        for cell in self.cells:
            yield from cell.constraints

    def __eq__(self, other):
        return isinstance(other, PLSet) and self.dim == other.dim and set(self.cells) == set(other.cells)

    def __hash__(self):
        return hash((self.dim, frozenset(self.cells)))

    def __repr__(self):
        return f"PLSet({self.dim}, {list(self.cells)!r})"


def member(s: PLSet, point) -> bool:
    return s.contains(point)


def _check(a: PLSet, b: PLSet):
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def union(*sets: PLSet) -> PLSet:
    dim = sets[0].dim
    for s in sets:
        _check(sets[0], s)
    return PLSet(dim, [c for s in sets for c in s.cells])


def intersect(a: PLSet, b: PLSet) -> PLSet:
    _check(a, b)
    cells = []
    for ca in a.cells:
        for cb in b.cells:
            c = ca.intersect(cb)
            if c is not None:
                cells.append(c)
    return PLSet(a.dim, cells)


def _cell_minus(cell: Cell, other: Cell) -> list[Cell]:
    if cell.intersect(other) is None:
        return [cell]
    pieces = []
    prefix = list(cell.constraints)
    for c in other.constraints:
        for neg in c.negations():
            p = Cell.make(cell.dim, prefix + [neg])
            if p is not None:
                pieces.append(p)
        prefix.append(c)
    return pieces


def subtract(a: PLSet, b: PLSet) -> PLSet:
    _check(a, b)
    out = []
    for cell in a.cells:
        pieces = [cell]
        for other in b.cells:
            pieces = [q for p in pieces for q in _cell_minus(p, other)]
            if not pieces:
                break
        out.extend(pieces)
    return PLSet(a.dim, out)


def complement(a: PLSet) -> PLSet:
    return subtract(PLSet.full(a.dim), a)


def is_disjoint(a: PLSet, b: PLSet) -> bool:
    return intersect(a, b).is_empty()


def pairwise_disjoint(s: PLSet) -> bool:
    cells = s.cells
    return all(cells[i].intersect(cells[j]) is None
               for i in range(len(cells)) for j in range(i + 1, len(cells)))


def disjointify(s: PLSet) -> PLSet:
    """Same point set, pairwise disjoint cells (cut along the constraint hyperplanes)."""
    if pairwise_disjoint(s):
        return s
    out: list[Cell] = []
    for cell in s.cells:
        rest = subtract(PLSet(s.dim, [cell]), PLSet(s.dim, out))
        out.extend(rest.cells)
    return PLSet(s.dim, out)


def product(a: PLSet, b: PLSet) -> PLSet:
    n, m = a.dim, b.dim
    cells = []
    for ca in a.cells:
        for cb in b.cells:
            cs = [AffineConstraint(c.coeffs + (Fraction(0),) * m, c.rhs, c.rel) for c in ca.constraints]
            cs += [AffineConstraint((Fraction(0),) * n + c.coeffs, c.rhs, c.rel) for c in cb.constraints]
            cells.append(Cell(n + m, cs, ca.witness + cb.witness))
    return PLSet(n + m, cells)


class AffineMap:
    """x -> matrix @ x + offset, from Q^n to Q^m."""

    __slots__ = ("matrix", "offset", "source_dim", "target_dim")

    def __init__(self, matrix, offset=None):
        self.matrix = tuple(vec(row) for row in matrix)
        self.target_dim = len(self.matrix)
        self.source_dim = len(self.matrix[0]) if self.matrix else 0
        if any(len(r) != self.source_dim for r in self.matrix):
            raise DimensionError("ragged matrix")
        self.offset = vec(offset) if offset is not None else (Fraction(0),) * self.target_dim
        if len(self.offset) != self.target_dim:
            raise DimensionError("offset length does not match matrix rows")

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    def __call__(self, point):
        if len(point) != self.source_dim:
            raise DimensionError(f"point of dimension {len(point)} for a map from Q^{self.source_dim}")
        point = vec(point)
        return tuple(dot(row, point) + o for row, o in zip(self.matrix, self.offset))

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self after inner."""
        if inner.target_dim != self.source_dim:
            raise DimensionError("maps are not composable")
        cols = list(zip(*inner.matrix)) if inner.matrix else [()] * inner.source_dim
        matrix = [[dot(row, col) for col in cols] for row in self.matrix]
        return AffineMap(matrix, self(inner.offset))

    def pull_constraint(self, c: AffineConstraint) -> AffineConstraint:
        cols = list(zip(*self.matrix))
        coeffs = [dot(c.coeffs, col) for col in cols]
        return AffineConstraint(coeffs, c.rhs - dot(c.coeffs, self.offset), c.rel)

    def __repr__(self):
        return f"AffineMap({[list(map(str, r)) for r in self.matrix]}, {list(map(str, self.offset))})"


def preimage(f: AffineMap, a: PLSet) -> PLSet:
    if f.target_dim != a.dim:
        raise DimensionError(f"map into Q^{f.target_dim} applied to a set in Q^{a.dim}")
    cells = []
    for cell in a.cells:
        c = Cell.make(f.source_dim, [f.pull_constraint(k) for k in cell.constraints])
        if c is not None:
            cells.append(c)
    return PLSet(f.source_dim, cells)


def image_injective(f: AffineMap, a: PLSet) -> PLSet:
    """Image of a under an injective affine map."""
    if f.source_dim != a.dim:
        raise DimensionError("dimension mismatch")
    n, m = f.source_dim, f.target_dim
    cols = [tuple(f.matrix[i][j] for i in range(m)) for j in range(n)]
    red, piv = rref(cols, m)
    if len(piv) != n:
        raise ValueError("map is not injective")
    # y - offset must lie in the column space and pull back into a
    annihilator, _ = nullspace(cols, m)
    # left inverse L: pick n independent rows of M
    rows_sel = []
    for i in range(m):
        trial = rows_sel + [i]
        if len(rref([f.matrix[k] for k in trial], n)[1]) == len(trial):
            rows_sel = trial
        if len(rows_sel) == n:
            break
    sub = [f.matrix[k] for k in rows_sel]
    # x = sub^{-1} (y_sel - offset_sel); express x_j as linear form in y
    inv_rows = []
    for j in range(n):
        e = [Fraction(int(j == k)) for k in range(n)]
        # row j of sub^{-1} solves sub^T z = e_j
        z = solve([list(col) for col in zip(*sub)], e, n)
        inv_rows.append(z)
    cells = []
    for cell in a.cells:
        cs = []
        for w in annihilator:
            cs.append(AffineConstraint(w, dot(w, f.offset), EQ))
        for k in cell.constraints:
            # k.coeffs . x = sum_j k_j sum_i inv[j][i] (y_sel_i - off_sel_i)
            lin = [Fraction(0)] * m
            const = Fraction(0)
            for j in range(n):
                for i, r in enumerate(rows_sel):
                    coef = k.coeffs[j] * inv_rows[j][i]
                    lin[r] += coef
                    const += coef * f.offset[r]
            cs.append(AffineConstraint(lin, k.rhs + const, k.rel))
        c = Cell.make(m, cs, f(cell.witness))
        if c is not None:
            cells.append(c)
    return PLSet(m, cells)


def translate(a: PLSet, v) -> PLSet:
    """a + v."""
    v = vec(v)
    if len(v) != a.dim:
        raise DimensionError("translation vector has the wrong length")
    n = a.dim
    shift = AffineMap.identity(n)
    shift = AffineMap(shift.matrix, tuple(-x for x in v))
    return preimage(shift, a)


def negate(a: PLSet) -> PLSet:
    """Image under the antipodal map x -> -x."""
    n = a.dim
    return preimage(AffineMap([[-int(i == j) for j in range(n)] for i in range(n)]), a)


def embedding_minus_one(n: int) -> AffineMap:
    """x -> (x, -1), identifying Q^n with the slice {s = -1} of Q^{n+1}."""
    matrix = [[int(i == j) for j in range(n)] for i in range(n)] + [[0] * n]
    return AffineMap(matrix, [0] * n + [-1])
