"""Objects k_P[d]^r and their sums, plus the operations that keep them in this form.

A term (P, d, r) contributes r to the stalk in cohomological degree -d at
points of P.  Pushforwards are not object-level operations; they only appear
inside the stalk evaluators of the transforms package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..cohomology.graded import GradedDims
from ..exactgeom.linalg import dot, vec
from ..exactgeom.sets import (
    LE,
    AffineConstraint,
    AffineMap,
    Cell,
    DimensionError,
    PLSet,
    intersect,
    preimage,
    product,
)


@dataclass(frozen=True)
class ShiftedTerm:
    set: PLSet
    shift: int = 0
    rank: int = 1

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if self.set.is_empty():
            raise ValueError("a term needs a nonempty set")


class ConstructibleObject:
    """sum of k_{P_i}[d_i]^{r_i} on Q^dim; no terms means the zero object."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Iterable[ShiftedTerm] = ()):
        kept = []
        for t in terms:
            if t.set.dim != dim:
                raise DimensionError(f"term of dimension {t.set.dim} in an object on Q^{dim}")
            if not t.set.is_empty():
                kept.append(t)
        self.dim = dim
        self.terms = tuple(kept)

    @classmethod
    def zero(cls, dim: int) -> "ConstructibleObject":
        return cls(dim)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        body = ", ".join(f"k_{t.set!r}[{t.shift}]^{t.rank}" for t in self.terms)
        return f"ConstructibleObject({self.dim}, [{body}])"


def constant(s: PLSet, shift_by: int = 0, rank: int = 1) -> ConstructibleObject:
    """k_s[shift]^rank (the zero object when s is empty)."""
    if s.is_empty():
        return ConstructibleObject(s.dim)
    return ConstructibleObject(s.dim, [ShiftedTerm(s, shift_by, rank)])


def _terms(s: PLSet, d: int, r: int) -> list[ShiftedTerm]:
    return [] if s.is_empty() else [ShiftedTerm(s, d, r)]


def stalk(f: ConstructibleObject, p) -> GradedDims:
    p = vec(p)
    if len(p) != f.dim:
        raise DimensionError(f"point of dimension {len(p)} for an object on Q^{f.dim}")
    out: dict[int, int] = {}
    for t in f.terms:
        if t.set.contains(p):
            out[-t.shift] = out.get(-t.shift, 0) + t.rank
    return GradedDims(out)


def tensor(f: ConstructibleObject, g: ConstructibleObject) -> ConstructibleObject:
    if f.dim != g.dim:
        raise DimensionError("tensor of objects on different spaces")
    terms = []
    for a in f.terms:
        for b in g.terms:
            terms += _terms(intersect(a.set, b.set), a.shift + b.shift, a.rank * b.rank)
    return ConstructibleObject(f.dim, terms)


def shift(f: ConstructibleObject, d: int) -> ConstructibleObject:
    return ConstructibleObject(f.dim, [ShiftedTerm(t.set, t.shift + d, t.rank) for t in f.terms])


def dsum(*objs: ConstructibleObject) -> ConstructibleObject:
    dim = objs[0].dim
    if any(o.dim != dim for o in objs):
        raise DimensionError("direct sum of objects on different spaces")
    return ConstructibleObject(dim, [t for o in objs for t in o.terms])


def external(f: ConstructibleObject, g: ConstructibleObject) -> ConstructibleObject:
    terms = []
    for a in f.terms:
        for b in g.terms:
            terms += _terms(product(a.set, b.set), a.shift + b.shift, a.rank * b.rank)
    return ConstructibleObject(f.dim + g.dim, terms)


def pullback_affine(f: ConstructibleObject, m: AffineMap) -> ConstructibleObject:
    if m.target_dim != f.dim:
        raise DimensionError("map target does not match the object's space")
    terms = []
    for t in f.terms:
        terms += _terms(preimage(m, t.set), t.shift, t.rank)
    return ConstructibleObject(m.source_dim, terms)


class Kernel:
    """A kernel on Q^{n1} x Q^{n2}, accessed through its fibers over the second factor."""

    n1: int
    n2: int

    def fiber(self, w) -> ConstructibleObject:
        raise NotImplementedError


class SemilinearKernel(Kernel):
    """A constructible object on the product space."""

    def __init__(self, obj: ConstructibleObject, n1: int, n2: int):
        if obj.dim != n1 + n2:
            raise DimensionError(f"kernel on Q^{obj.dim} declared as Q^{n1} x Q^{n2}")
        self.obj, self.n1, self.n2 = obj, n1, n2

    def fiber(self, w) -> ConstructibleObject:
        return pullback_affine(self.obj, slice_map(self.n1, w))

    def __repr__(self):
        return f"SemilinearKernel({self.obj!r}, {self.n1}, {self.n2})"


class PairingKernel(Kernel):
    """k_{<x,y> <= 0} on V x W, or k_{<x,y> <= t} on V x (W x Q) when nonhomogeneous.

    These sets are not semilinear on the product, but every fiber is.
    """

    def __init__(self, n: int, pairing=None, nonhomogeneous: bool = False):
        self.n1 = n
        self.n2 = n + (1 if nonhomogeneous else 0)
        self.nonhomogeneous = nonhomogeneous
        if pairing is None:
            pairing = [[int(i == j) for j in range(n)] for i in range(n)]
        self.pairing = tuple(vec(r) for r in pairing)
        if len(self.pairing) != n or any(len(r) != n for r in self.pairing):
            raise DimensionError(f"pairing must be {n}x{n}")

    def fiber(self, w) -> ConstructibleObject:
        w = vec(w)
        y = w[: self.n1]
        t = w[self.n1] if self.nonhomogeneous else Fraction(0)
        coeffs = [dot(row, y) for row in self.pairing]
        cell = Cell.make(self.n1, [AffineConstraint(coeffs, t, LE)])
        return constant(PLSet(self.n1, [cell] if cell else []))

    def __repr__(self):
        kind = "nonhomogeneous" if self.nonhomogeneous else "homogeneous"
        return f"PairingKernel({self.n1}, {kind})"


def slice_map(n1: int, w: Sequence) -> AffineMap:
    """x -> (x, w)."""
    w = vec(w)
    n2 = len(w)
    matrix = [[int(i == j) for j in range(n1)] for i in range(n1)] + [[0] * n1 for _ in range(n2)]
    return AffineMap(matrix, [Fraction(0)] * n1 + list(w))


def kernel_fiber(k: Kernel, w) -> ConstructibleObject:
    """Restriction of the kernel to Q^{n1} x {w}."""
    w = vec(w)
    if len(w) != k.n2:
        raise DimensionError(f"fiber point of dimension {len(w)}, kernel second factor is Q^{k.n2}")
    return k.fiber(w)
