"""The convolution in the t-variable and composition of kernels over X x Q_t.

For objects on X x Q_t the last coordinate is t.  Stalks of

    G (x)~ G' = Rs_!(p1^{-1} G (x) p2^{-1} G')          (s adds the t's)
    L12 o~ L23 = Rq13_!(q12^{-1} L12 (x)~ q23^{-1} L23)

are H*_c of the fibers {t1 : (x, t1) in G, (x, t - t1) in G'} and
{(x2, t1) : (x1, x2, t1) in L12, (x2, x3, t - t1) in L23}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from ..cohomology.graded import GradedDims
from ..exactgeom.linalg import dot, vec
from ..exactgeom.sets import LE, AffineConstraint, AffineMap, Cell, DimensionError, PLSet
from ..sheafobj.objects import ConstructibleObject, constant, external, pullback_affine, stalk, tensor
from .evaluators import rgamma_c


def t_nonneg(n: int = 0) -> ConstructibleObject:
    """k_{t >= 0} on Q^n x Q_t, the unit of the t-convolution."""
    e = [0] * n + [-1]
    return constant(PLSet(n + 1, [Cell(n + 1, [AffineConstraint(e, 0, LE)])]))


def tilde(f: ConstructibleObject) -> ConstructibleObject:
    """f ⊠ k_{t >= 0}."""
    return external(f, t_nonneg(0))


class TKernel:
    """An object on X_a x X_b x Q_t, sliced over either factor."""

    na: int
    nb: int

    def slice_a(self, xa) -> ConstructibleObject:
        """Restriction to {xa} x X_b x Q_t, as an object on X_b x Q_t."""
        raise NotImplementedError

    def slice_b(self, xb) -> ConstructibleObject:
        """Restriction to X_a x {xb} x Q_t, as an object on X_a x Q_t."""
        raise NotImplementedError


class SemilinearTKernel(TKernel):
    def __init__(self, obj: ConstructibleObject, na: int, nb: int):
        if obj.dim != na + nb + 1:
            raise DimensionError(f"object on Q^{obj.dim} declared on Q^{na} x Q^{nb} x Q_t")
        self.obj, self.na, self.nb = obj, na, nb

    def _insert(self, values, start: int) -> AffineMap:
        n = self.obj.dim
        values = vec(values)
        keep = [i for i in range(n) if not start <= i < start + len(values)]
        matrix = [[int(i == k) for k in keep] for i in range(n)]
        offset = [values[i - start] if start <= i < start + len(values) else Fraction(0) for i in range(n)]
        return AffineMap(matrix, offset)

    def slice_a(self, xa):
        return pullback_affine(self.obj, self._insert(xa, 0))

    def slice_b(self, xb):
        return pullback_affine(self.obj, self._insert(xb, self.na))


class PairingTKernel(TKernel):
    """k_{<x,y> <= t} on V x W x Q_t."""

    def __init__(self, n: int, pairing=None):
        self.na = self.nb = n
        if pairing is None:
            pairing = [[int(i == j) for j in range(n)] for i in range(n)]
        self.pairing = [vec(r) for r in pairing]

    def slice_a(self, x):
        x = vec(x)
        c = [dot(x, col) for col in zip(*self.pairing)]
        return constant(PLSet(self.nb + 1, [Cell(self.nb + 1, [AffineConstraint(c + [-1], 0, LE)])]))

    def slice_b(self, y):
        y = vec(y)
        c = [dot(row, y) for row in self.pairing]
        return constant(PLSet(self.na + 1, [Cell(self.na + 1, [AffineConstraint(c + [-1], 0, LE)])]))


def _t_maps(m: int, t):
    """(u, t1) -> (u, t1) and (u, t1) -> (u, t - t1) on Q^m x Q."""
    ident = AffineMap.identity(m + 1)
    flip = [[int(i == j) for j in range(m + 1)] for i in range(m)] + [[0] * m + [-1]]
    return ident, AffineMap(flip, [0] * m + [t])


def ttens_stalk(g: ConstructibleObject, g2: ConstructibleObject, point) -> GradedDims:
    """Stalk at (x, t) of g (x)~ g2."""
    point = vec(point)
    if not (g.dim == g2.dim == len(point)):
        raise DimensionError("ttens_stalk needs two objects and a point on the same X x Q_t")
    n = len(point) - 1
    x, t = point[:n], point[n]
    onto = AffineMap([[0]] * n + [[1]], list(x) + [0])  # t1 -> (x, t1)
    back = AffineMap([[0]] * n + [[-1]], list(x) + [t])  # t1 -> (x, t - t1)
    return rgamma_c(tensor(pullback_affine(g, onto), pullback_affine(g2, back)))


def tcomp_stalk(l12: TKernel, l23: TKernel, point) -> GradedDims:
    """Stalk at (x1, x3, t) of l12 o~ l23; the fiber has coordinates (x2, t1)."""
    point = vec(point)
    n1, n2, n3 = l12.na, l12.nb, l23.nb
    if l23.na != n2:
        raise DimensionError("middle factors do not match")
    if len(point) != n1 + n3 + 1:
        raise DimensionError("point must lie in X1 x X3 x Q_t")
    x1, x3, t = point[:n1], point[n1:n1 + n3], point[-1]
    ident, flip = _t_maps(n2, t)
    a = pullback_affine(l12.slice_a(x1), ident)
    b = pullback_affine(l23.slice_b(x3), flip)
    return rgamma_c(tensor(a, b))


def tamarkin_check(g: ConstructibleObject, samples: Iterable) -> tuple[bool, object]:
    """Whether g (x)~ k_{t>=0} has the stalks of g at every sample; (ok, first failing point)."""
    unit = t_nonneg(g.dim - 1)
    for p in samples:
        if ttens_stalk(g, unit, p) != stalk(g, p):
            return False, tuple(vec(p))
    return True, None
