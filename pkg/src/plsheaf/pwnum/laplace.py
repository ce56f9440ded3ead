"""Numerical Fourier-Laplace transforms of test functions on polytopes.

psi(y) = integral over A of exp(-<x, y>) phi(x) dx for complex y, by tensor
Gauss-Legendre quadrature (boxes directly, simplices through the collapsed
Duffy map from the unit cube).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import factorial

import numpy as np

from ..convexcalc.cones import vertices
from ..exactgeom.linalg import nullspace
from ..exactgeom.sets import LE, AffineConstraint, Cell, PLSet

KINDS = ("indicator", "bump")


@dataclass(frozen=True)
class TestFunction:
    """Indicator or product bump on a box or a simplex.

    A box is given by lower/upper corners; a simplex by n + 1 vertices.
    """

    __test__ = False  # keep pytest from collecting this class

    kind: str
    shape: str
    data: tuple  # (lower, upper) for a box, vertex tuple for a simplex

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.shape not in ("box", "simplex"):
            raise ValueError("shape must be box or simplex")

    @classmethod
    def box(cls, lower, upper, kind="indicator") -> "TestFunction":
        lo = tuple(Fraction(v) for v in lower)
        hi = tuple(Fraction(v) for v in upper)
        if len(lo) != len(hi) or any(a >= b for a, b in zip(lo, hi)):
            raise ValueError("box needs lower < upper in every coordinate")
        return cls(kind, "box", (lo, hi))

    @classmethod
    def cube(cls, radius, dim, kind="indicator") -> "TestFunction":
        r = Fraction(radius)
        return cls.box([-r] * dim, [r] * dim, kind)

    @classmethod
    def simplex(cls, verts, kind="indicator") -> "TestFunction":
        vs = tuple(tuple(Fraction(v) for v in p) for p in verts)
        n = len(vs[0])
        if len(vs) != n + 1:
            raise ValueError("a simplex in Q^n needs n + 1 vertices")
        if abs(np.linalg.det(_edges(vs))) < 1e-14:
            raise ValueError("degenerate simplex")
        return cls(kind, "simplex", vs)

    @classmethod
    def standard_simplex(cls, radius, dim, kind="indicator") -> "TestFunction":
        r = Fraction(radius)
        verts = [[Fraction(0)] * dim] + [[r * int(i == j) for j in range(dim)] for i in range(dim)]
        return cls.simplex(verts, kind)

    @property
    def dim(self) -> int:
        return len(self.data[0])

    def body(self) -> Cell:
        """The support as an exact closed cell."""
        n = self.dim
        if self.shape == "box":
            return PLSet.box(*self.data).cells[0]
        # facet opposite vertex j: the affine function vanishing on the others, nonnegative at j
        cs = []
        vs = self.data
        for j in range(n + 1):
            others = [v for k, v in enumerate(vs) if k != j]
            a = _facet_normal(others)
            b = sum(x * y for x, y in zip(a, others[0]))
            if sum(x * y for x, y in zip(a, vs[j])) > b:
                a, b = [-x for x in a], -b
            cs.append(AffineConstraint(a, b, LE))
        return Cell(n, cs)

    def vertices(self) -> np.ndarray:
        return np.array([[float(c) for c in v] for v in vertices(self.body())])


def _edges(vs):
    v0 = np.array([float(c) for c in vs[0]])
    return np.array([[float(c) for c in v] for v in vs[1:]]) - v0


def _facet_normal(points):
    """A rational normal of the hyperplane through n points of Q^n."""
    n = len(points[0])
    rows = [tuple(p[i] - points[0][i] for i in range(n)) for p in points[1:]]
    if not rows:
        return [Fraction(1)]
    return list(nullspace(rows, n)[0][0])


def _bump_profile(u):
    """exp(-1/(1 - u^2)) on (-1, 1), zero outside."""
    out = np.zeros_like(u)
    inside = np.abs(u) < 1
    out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
    return out


def _gauss(q):
    x, w = np.polynomial.legendre.leggauss(q)
    return (x + 1) / 2, w / 2  # on [0, 1]


def quadrature_rule(phi: TestFunction, quad_points: int):
    """Nodes (N x n) and weights (N) with the test function folded into the weights."""
    if quad_points < 8:
        raise ValueError("quad_points must be at least 8")
    n = phi.dim
    t, w = _gauss(quad_points)
    grid = np.array(list(iproduct(range(quad_points), repeat=n)))
    u = t[grid]
    weight = np.prod(w[grid], axis=1)
    if phi.shape == "box":
        lo = np.array([float(v) for v in phi.data[0]])
        hi = np.array([float(v) for v in phi.data[1]])
        x = lo + u * (hi - lo)
        weight = weight * np.prod(hi - lo)
        if phi.kind == "bump":
            weight = weight * np.prod(_bump_profile(2 * u - 1), axis=1)
        return x, weight
    # collapsed coordinates: lam_1 = u_1, lam_k = (1 - u_1)...(1 - u_{k-1}) u_k
    lam = np.empty((len(u), n + 1))
    rest = np.ones(len(u))
    jac = np.ones(len(u))
    for k in range(n):
        lam[:, k + 1] = rest * u[:, k]
        jac = jac * rest
        rest = rest * (1 - u[:, k])
    lam[:, 0] = rest
    vs = np.array([[float(c) for c in v] for v in phi.data])
    x = lam @ vs
    weight = weight * jac * abs(np.linalg.det(_edges(phi.data)))
    if phi.kind == "bump":
        safe = np.where(lam > 0, lam, 1.0)
        weight = weight * np.where(np.all(lam > 0, axis=1), np.prod(np.exp(-1.0 / safe), axis=1), 0.0)
    return x, weight


def laplace_numeric(phi: TestFunction, y, quad_points: int = 64) -> complex:
    """psi(y) for one complex vector y."""
    return complex(laplace_grid(phi, np.atleast_2d(np.asarray(y, dtype=complex)), quad_points)[0])


def laplace_grid(phi: TestFunction, ys, quad_points: int = 64, chunk: int = 2048) -> np.ndarray:
    """psi at each row of ys (M x n complex)."""
    ys = np.asarray(ys, dtype=complex)
    if ys.ndim != 2 or ys.shape[1] != phi.dim:
        raise ValueError(f"frequencies must be an array of shape (M, {phi.dim})")
    x, w = quadrature_rule(phi, quad_points)
    out = np.empty(len(ys), dtype=complex)
    for s in range(0, len(ys), chunk):
        out[s:s + chunk] = np.exp(-(ys[s:s + chunk] @ x.T)) @ w
    return out


# closed forms


def box_indicator_oracle(lower, upper, y) -> complex:
    """prod_i (exp(-a_i y_i) - exp(-b_i y_i)) / y_i, with b_i - a_i at y_i = 0."""
    out = 1.0 + 0j
    for a, b, z in zip(lower, upper, np.atleast_1d(np.asarray(y, dtype=complex))):
        a, b = float(a), float(b)
        out *= (b - a) if z == 0 else (np.exp(-a * z) - np.exp(-b * z)) / z
    return complex(out)


def simplex_indicator_oracle(radius, y) -> complex:
    """Transform of the indicator of conv{0, r e_1, ..., r e_n} by divided differences.

    Needs r y_i pairwise distinct and nonzero; accuracy degrades as they collide.
    """
    z = np.concatenate([[0.0], -float(radius) * np.asarray(y, dtype=complex)])
    n = len(z) - 1
    total = 0j
    for j in range(n + 1):
        den = np.prod([z[j] - z[k] for k in range(n + 1) if k != j])
        total += np.exp(z[j]) / den
    return complex(total * float(radius) ** n)


def simplex_volume(verts) -> float:
    return abs(np.linalg.det(_edges(verts))) / factorial(len(verts) - 1)
