"""Polygonal stand-in for the hyperbolic region {x1^2 - x2^2 <= c^2} in the plane.

The complement of the region is two open convex pieces: R (x1 > 0) and -R.
R is replaced by an open convex polygon R' inscribed in it, with vertices
p(m) = (c(m + 1/m)/2, c(m - 1/m)/2) on the hyperbola and two end rays along
the asymptotic directions (1, -1) and (1, 1).  Then A' = Q^2 minus (R' ∪ -R').

For the half-plane {<x, y> <= t} the topology of A' ∩ H only depends on which
pieces lie inside the open half-plane, i.e. on whether sup over the piece of
<x, y> is <= t.  The vertex set is chosen per sample (y, t) so that this
incidence is the same for R' and R.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Optional

from ..exactgeom.linalg import vec
from ..exactgeom.sets import LT, AffineConstraint, Cell, PLSet, negate, subtract, union


def hyperbola_point(m: Fraction, c: Fraction) -> tuple:
    return (c * (m + 1 / m) / 2, c * (m - 1 / m) / 2)


def _right_side(a, d) -> AffineConstraint:
    """Open half-plane to the right of the line through a with direction d."""
    # d1 (p2 - a2) - d2 (p1 - a1) < 0
    return AffineConstraint((-d[1], d[0]), -d[1] * a[0] + d[0] * a[1], LT)


def inscribed_piece(ms, c) -> PLSet:
    """The open polygon R' with hyperbola vertices at the parameters ms."""
    ms = sorted(set(Fraction(m) for m in ms))
    if not ms or ms[0] <= 0:
        raise ValueError("vertex parameters must be positive")
    c = Fraction(c)
    pts = [hyperbola_point(m, c) for m in ms]
    cs = [_right_side(pts[0], (Fraction(-1), Fraction(1)))]
    for a, b in zip(pts, pts[1:]):
        cs.append(_right_side(a, (b[0] - a[0], b[1] - a[1])))
    cs.append(_right_side(pts[-1], (Fraction(1), Fraction(1))))
    return PLSet(2, [Cell(2, cs)])


def surrogate_region(ms, c) -> PLSet:
    """Q^2 minus (R' ∪ -R'), split along x1 = 0 (R' lies in x1 > 0) to keep few cells."""
    piece = inscribed_piece(ms, c)
    right = subtract(PLSet.parse(2, "x1 >= 0"), piece)
    left = subtract(PLSet.parse(2, "x1 < 0"), negate(piece))
    return union(right, left)


def _pairing_on_piece(m: Fraction, z, c) -> Fraction:
    p = hyperbola_point(m, c)
    return p[0] * z[0] + p[1] * z[1]


def _exact_sqrt(r: Fraction) -> Optional[Fraction]:
    if r < 0:
        return None
    a, b = isqrt(r.numerator), isqrt(r.denominator)
    if a * a == r.numerator and b * b == r.denominator:
        return Fraction(a, b)
    return None


def piece_below(z, t, c) -> bool:
    """Whether the true piece R lies in {<x, z> < t}, i.e. sup_R <x, z> <= t (exact)."""
    z1, z2 = z
    if z1 > -abs(z2):
        return False  # the piece is unbounded in direction z
    if z1 == -abs(z2):
        return t >= 0  # sup is 0, approached along an asymptote
    # sup = -c sqrt(z1^2 - z2^2)
    return t >= 0 or t * t <= c * c * (z1 * z1 - z2 * z2)


def _polygon_sup(ms, z, c):
    z1, z2 = z
    if z1 > -abs(z2):
        return None
    return max(_pairing_on_piece(m, z, c) for m in ms)


def choose_parameters(y, t, c=1, base=(Fraction(1),), max_steps: int = 40):
    """Vertex parameters for which R' and -R' meet {<x,y> <= t} like R and -R do."""
    y = vec(y)
    t = Fraction(t)
    c = Fraction(c)
    ms = set(Fraction(m) for m in base)
    for z in (y, tuple(-v for v in y)):
        z1, z2 = z
        if z1 > -abs(z2) or z == (0, 0):
            continue
        truth = piece_below(z, t, c)
        if truth:
            continue  # an inscribed piece has a smaller sup, so it is below as well
        if z1 == -abs(z2):
            # sup 0 is approached as m -> oo (z2 > 0) or m -> 0 (z2 < 0)
            m = Fraction(2)
            while _polygon_sup(ms | {m, 1 / m}, z, c) <= t:
                m *= 2
            ms |= {m, 1 / m}
            continue
        target = Fraction(-z1 + z2) / Fraction(-z1 - z2)  # m*^2 at the tangency
        exact = _exact_sqrt(target)
        if exact is not None:
            ms.add(exact)
            continue
        # best rational approximations of m* with growing denominators
        scale = 10 ** 60
        root = Fraction(isqrt(target.numerator * target.denominator * scale * scale), target.denominator * scale)
        bound = 4
        for _ in range(max_steps):
            m = root.limit_denominator(bound)
            if m > 0 and _polygon_sup(ms | {m}, z, c) > t:
                ms.add(m)
                break
            bound *= 4
        else:
            raise ArithmeticError("tangency refinement did not separate the sample")
    return sorted(ms)


def quadric_surrogate(y, t, c=1) -> PLSet:
    """The polygonal model of {x1^2 - x2^2 <= c^2} adapted to the sample (y, t)."""
    return surrogate_region(choose_parameters(y, t, c), c)


def quadric_prediction(y, t, c=1) -> bool:
    """Exact membership in {y1^2 >= y2^2, t >= -c sqrt(y1^2 - y2^2)}."""
    y1, y2 = vec(y)
    t = Fraction(t)
    c = Fraction(c)
    d = y1 * y1 - y2 * y2
    return d >= 0 and (t >= 0 or t * t <= c * c * d)
