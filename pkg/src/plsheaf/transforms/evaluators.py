"""Stalks of kernel transforms, each reduced to H*_c of one semilinear fiber.

The stalk at w of F o K = Rq2_!(q1^{-1} F (x) K) is RΓ_c of F restricted to the
fiber of K over w; with F and the fiber both sums of shifted constant sheaves
that is a sum of H*_c(P_i ∩ Q_j)[d_i + e_j].  Nothing is pushed forward at
the object level.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..cohomology.cellular import hc
from ..cohomology.graded import GradedDims
from ..exactgeom.linalg import vec
from ..exactgeom.sets import AffineMap, DimensionError, PLSet
from ..sheafobj.objects import (
    ConstructibleObject,
    Kernel,
    PairingKernel,
    constant,
    kernel_fiber,
    pullback_affine,
    tensor,
)


def rgamma_c(obj: ConstructibleObject) -> GradedDims:
    """Graded dimensions of RΓ_c(Q^n; obj)."""
    out = GradedDims()
    for t in obj.terms:
        out = out + hc(t.set).shifted(t.shift).scaled(t.rank)
    return out


def _check_dim(f: ConstructibleObject, n: int, what: str):
    if f.dim != n:
        raise DimensionError(f"{what}: object lives on Q^{f.dim}, expected Q^{n}")


def stalk_compose(f: ConstructibleObject, k: Kernel, w) -> GradedDims:
    """(f o k)_w for f on Q^{n1} and k on Q^{n1} x Q^{n2}."""
    _check_dim(f, k.n1, "stalk_compose")
    return rgamma_c(tensor(f, kernel_fiber(k, w)))


def fourier_sato_stalk(f: ConstructibleObject, y, pairing=None) -> GradedDims:
    """Stalk at y of the composition with k_{<x,y> <= 0}."""
    return stalk_compose(f, PairingKernel(f.dim, pairing), y)


def nh_fourier_stalk(f: ConstructibleObject, point, pairing=None) -> GradedDims:
    """Stalk at (y, t) of the composition with k_{<x,y> <= t}."""
    return stalk_compose(f, PairingKernel(f.dim, pairing, nonhomogeneous=True), point)


def conification_stalk(f: ConstructibleObject, x) -> GradedDims:
    """Stalk at x of the conification: H^{*+1}_c of f pulled back to the ray {s x : s > 0}.

    At x = 0 the ray degenerates to the constant map and the same formula gives
    H^{*+1}_c(R^+) (x) f_0 = f_0.
    """
    x = vec(x)
    _check_dim(f, len(x), "conification_stalk")
    ray = AffineMap([[v] for v in x], [Fraction(0)] * len(x))
    on_ray = pullback_affine(f, ray)
    positive = constant(PLSet.parse(1, "x1 > 0"))
    return rgamma_c(tensor(on_ray, positive)).shifted(1)


def convolution_stalk(f: ConstructibleObject, g: ConstructibleObject, x) -> GradedDims:
    """Stalk at x of Rs_!(f ⊠ g): sum of H*_c(P_i ∩ (x - Q_j))."""
    x = vec(x)
    if f.dim != g.dim:
        raise DimensionError("convolution of objects on different spaces")
    _check_dim(f, len(x), "convolution_stalk")
    n = len(x)
    reflect = AffineMap([[-int(i == j) for j in range(n)] for i in range(n)], x)
    reflected = pullback_affine(g, reflect)  # terms become x - Q_j
    return rgamma_c(tensor(f, reflected))


def restrict(obj: ConstructibleObject, fixed: dict) -> ConstructibleObject:
    """Pull obj back along the map inserting fixed coordinate values.

    `fixed` maps coordinate index -> value; the remaining coordinates, in order,
    become the coordinates of the result.
    """
    n = obj.dim
    free = [i for i in range(n) if i not in fixed]
    m = len(free)
    matrix = [[0] * m for _ in range(n)]
    offset = [Fraction(0)] * n
    for j, i in enumerate(free):
        matrix[i][j] = 1
    for i, v in fixed.items():
        offset[i] = Fraction(v)
    return pullback_affine(obj, AffineMap(matrix, offset))


def kernel_compose_stalk(k12: ConstructibleObject, k23: ConstructibleObject, dims: Sequence[int],
                         point) -> GradedDims:
    """Stalk at (x1, x3) of k12 o k23 for semilinear kernels on X1 x X2 and X2 x X3."""
    n1, n2, n3 = dims
    point = vec(point)
    if len(point) != n1 + n3:
        raise DimensionError("point must lie in X1 x X3")
    x1, x3 = point[:n1], point[n1:]
    a = restrict(k12, {i: x1[i] for i in range(n1)})
    b = restrict(k23, {n2 + i: x3[i] for i in range(n3)})
    return rgamma_c(tensor(a, b))
