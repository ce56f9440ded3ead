"""Faces of a rational hyperplane arrangement.

A face is a nonempty set of the form {x : sign(h_k(x)) = s_k for all k}, where
h_k(x) = a_k . x - b_k.  Faces are relatively open convex polyhedra, the
closure of a face is a union of faces, and F lies in the closure of G exactly
when every nonzero sign of F agrees with G.

Faces are enumerated depth first, one hyperplane at a time.  Each partial face
carries an exact relative-interior witness; a split needs an LP only when the
new hyperplane is nonconstant on the face and nonzero at the witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .linalg import dot, in_rowspace, nullspace, rref
from .lp import maximize_from
from .sets import EQ, LE, LT, AffineConstraint, Cell, PLSet

ANY = frozenset((-1, 0, 1))


@dataclass
class Face:
    signs: tuple
    witness: tuple
    dim: int
    basis: list = field(repr=False)  # direction vectors, canonical nullspace basis
    free: list = field(repr=False)  # free columns of that basis

    def coords(self, v):
        """Coordinates of a direction vector of this face in its basis."""
        return [v[c] for c in self.free]

    def below(self, other: "Face") -> bool:
        """Whether self lies in the closure of other."""
        return all(s == 0 or s == t for s, t in zip(self.signs, other.signs))


def _sign(v) -> int:
    return (v > 0) - (v < 0)


class Arrangement:
    """A list of hyperplanes a . x = b with primitive integer data."""

    def __init__(self, dim: int, hyperplanes: Iterable[tuple] = ()):
        self.dim = dim
        self.hyperplanes: list[tuple] = []
        self._index: dict = {}
        for a, b in hyperplanes:
            self.add(a, b)

    def add(self, a, b) -> int:
        c = AffineConstraint(a, b, LE)
        if c.is_trivial():
            raise ValueError("degenerate hyperplane")
        normal, rhs, _ = c.hyperplane()
        key = (normal, rhs)
        if key not in self._index:
            self._index[key] = len(self.hyperplanes)
            self.hyperplanes.append(key)
        return self._index[key]

    @classmethod
    def of_sets(cls, dim: int, *sets: PLSet, extra: Iterable[tuple] = ()) -> "Arrangement":
        arr = cls(dim)
        for s in sets:
            for c in s.constraints():
                arr.add(c.coeffs, c.rhs)
        for a, b in extra:
            arr.add(a, b)
        return arr

    def allowed_signs(self, cell: Cell) -> dict:
        """Sign restrictions imposed by a cell, per hyperplane index."""
        allowed: dict[int, frozenset] = {}
        for c in cell.constraints:
            normal, rhs, orient = c.hyperplane()
            k = self._index[(normal, rhs)]
            if c.rel == EQ:
                s = frozenset((0,))
            elif c.rel == LE:
                s = frozenset((0, -orient))
            else:
                s = frozenset((-orient,))
            allowed[k] = allowed.get(k, ANY) & s
        return allowed

    def sign_vector(self, point) -> tuple:
        return tuple(_sign(dot(a, point) - b) for a, b in self.hyperplanes)

    def faces(self, allowed: Optional[dict] = None) -> list[Face]:
        """All faces whose sign vectors respect the given restrictions."""
        allowed = allowed or {}
        m = len(self.hyperplanes)
        order = sorted(range(m), key=lambda k: (k not in allowed, k))
        start = tuple(Fraction(0) for _ in range(self.dim))
        out: list[Face] = []
        self._dfs(order, 0, {}, start, [], [], [], allowed, out)
        return out

    def faces_in(self, s: PLSet) -> list[Face]:
        """Faces contained in the union s (all hyperplanes of s must be present)."""
        seen = {}
        for cell in s.cells:
            for f in self.faces(self.allowed_signs(cell)):
                seen.setdefault(f.signs, f)
        return [seen[k] for k in sorted(seen)]

    def face_of(self, point) -> Face:
        """The face containing a point (its witness is the point itself)."""
        signs = self.sign_vector(point)
        eqs = [a for (a, _), s in zip(self.hyperplanes, signs) if s == 0]
        red, _ = rref(eqs, self.dim) if eqs else ([], [])
        basis, free = _basis(red, self.dim)
        return Face(signs, tuple(Fraction(x) for x in point), len(basis), basis, free)

    def _dfs(self, order, depth, signs, w, red, piv, strict, allowed, out):
        n = self.dim
        if depth == len(order):
            basis, free = _basis(red, n)
            out.append(Face(tuple(signs[k] for k in range(len(order))), w, len(basis), basis, free))
            return
        k = order[depth]
        a, b = self.hyperplanes[k]
        ok = allowed.get(k, ANY)
        v = dot(a, w) - b
        s0 = _sign(v)
        children: list[tuple[int, tuple]] = []
        if in_rowspace(red, piv, a):
            if s0 in ok:
                children.append((s0, w))
        elif s0 == 0:
            if 0 in ok:
                children.append((0, w))
            if ok & {-1, 1}:
                plus, minus = self._nudge(a, w, red, strict)
                if 1 in ok:
                    children.append((1, plus))
                if -1 in ok:
                    children.append((-1, minus))
        else:
            if s0 in ok:
                children.append((s0, w))
            if 0 in ok or -s0 in ok:
                found = self._cross(a, b, w, v, s0, red, strict)
                if found is not None:
                    if 0 in ok:
                        children.append((0, found[0]))
                    if -s0 in ok:
                        children.append((-s0, found[1]))
        for s, pt in sorted(children, key=lambda t: t[0]):
            signs[k] = s
            if s == 0:
                red2, piv2 = rref(list(red) + [a], n)
                self._dfs(order, depth + 1, signs, pt, red2, piv2, strict, allowed, out)
            else:
                self._dfs(order, depth + 1, signs, pt, red, piv, strict + [(k, s)], allowed, out)
            del signs[k]

    def _nudge(self, a, w, red, strict):
        """Points of the face on either side of a hyperplane through w."""
        basis, _ = _basis(red, self.dim)
        d = next(v for v in basis if dot(a, v) != 0)
        eps = Fraction(1)
        for k, _s in strict:
            g, c = self.hyperplanes[k]
            gd = dot(g, d)
            if gd != 0:
                eps = min(eps, abs(dot(g, w) - c) / abs(gd) / 2)
        if dot(a, d) < 0:
            d = tuple(-x for x in d)
        plus = tuple(x + eps * y for x, y in zip(w, d))
        minus = tuple(x - eps * y for x, y in zip(w, d))
        return plus, minus

    def _cross(self, a, b, w, v, s0, red, strict):
        """If the face reaches the far side of a.x = b: a point on it and one beyond."""
        n = self.dim
        basis, _ = _basis(red, n)
        rows, rhs = [], []
        for k, s in strict:
            g, c = self.hyperplanes[k]
            rows.append([-s * dot(g, col) for col in basis])
            rhs.append(abs(dot(g, w) - c))
        obj = [-s0 * dot(a, col) for col in basis]
        res = maximize_from(rows, rhs, obj, [Fraction(0)] * len(basis))

        def lift(u):
            return tuple(w[i] + sum((u[j] * basis[j][i] for j in range(len(basis))), Fraction(0))
                         for i in range(n))

        if res.status == "optimal":
            end = lift(res.point)
        else:
            # walk along the unbounded ray until -s0*h >= 1
            u0 = res.point
            h0 = dot(a, lift(u0)) - b
            slope = sum((dot(a, col) * r for col, r in zip(basis, res.ray)), Fraction(0))
            tau = max(Fraction(0), (1 + s0 * h0) / (-s0 * slope))
            end = lift(tuple(x + tau * r for x, r in zip(u0, res.ray)))
        he = dot(a, end) - b
        if _sign(he) != -s0:
            return None
        lam0 = v / (v - he)
        lam1 = (lam0 + 1) / 2
        zero_pt = tuple(x + lam0 * (y - x) for x, y in zip(w, end))
        far_pt = tuple(x + lam1 * (y - x) for x, y in zip(w, end))
        return zero_pt, far_pt


def _basis(red, n):
    if red:
        return nullspace(red, n)
    return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)], list(range(n))


def face_cell(arr: Arrangement, face: Face) -> Cell:
    """The face as a Cell (one constraint per hyperplane)."""
    cs = []
    for (a, b), s in zip(arr.hyperplanes, face.signs):
        if s == 0:
            cs.append(AffineConstraint(a, b, EQ))
        elif s < 0:
            cs.append(AffineConstraint(a, b, LT))
        else:
            cs.append(AffineConstraint(tuple(-x for x in a), -b, LT))
    return Cell(arr.dim, cs, face.witness)
