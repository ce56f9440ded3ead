"""Stabilization certificates for |psi(y)| <= c (1 + |y|)^m exp(sigma_A(-Re y)).

On a grid of complex frequencies with per-axis extent Y, the weighted values
|psi| (1 + |y|)^-m exp(-sigma_A(-Re y)) are maximized separately over the
inner half-grid (every real and imaginary coordinate within Y/2) and over the
rest.  The verdict is BOUNDED when the outer maximum is at most (1 + tol)
times the inner one.  This is evidence of stabilization, not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Optional, Sequence

import numpy as np

from ..convexcalc.cones import as_cell, vertices
from .laplace import TestFunction, laplace_grid

TOL = 0.05


@dataclass
class TransformGrid:
    """Frequencies y = s + i tau with every real coordinate in linspace(-ymax, ymax, count)."""

    dim: int
    ymax: float
    count: int
    values: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.count < 3 or self.count % 2 == 0:
            raise ValueError("grid count must be odd and at least 3")
        if self.ymax <= 0:
            raise ValueError("ymax must be positive")

    @property
    def axis(self) -> np.ndarray:
        return np.linspace(-self.ymax, self.ymax, self.count)

    @property
    def points(self) -> np.ndarray:
        ax = self.axis
        idx = np.array(list(iproduct(range(self.count), repeat=2 * self.dim)))
        re = ax[idx[:, : self.dim]]
        im = ax[idx[:, self.dim:]]
        return re + 1j * im

    def inner_mask(self) -> np.ndarray:
        p = self.points
        reach = np.maximum(np.abs(p.real), np.abs(p.imag)).max(axis=1)
        return reach <= self.ymax / 2 + 1e-12

    def evaluate(self, phi: TestFunction, quad_points: int = 64) -> np.ndarray:
        self.values = laplace_grid(phi, self.points, quad_points)
        return self.values


@dataclass(frozen=True)
class GrowthCertificate:
    order: float
    constant: float
    inner_max: float
    outer_max: float
    verdict: str  # BOUNDED | UNBOUNDED

    @property
    def ratio(self) -> float:
        return self.outer_max / self.inner_max if self.inner_max > 0 else float("inf")

    def to_dict(self) -> dict:
        return {"order": self.order, "constant": self.constant, "inner_max": self.inner_max,
                "outer_max": self.outer_max, "ratio": self.ratio, "verdict": self.verdict}


def support_values(body, re_y: np.ndarray) -> np.ndarray:
    """sigma_A(-Re y) for a bounded body, from its exact vertex list."""
    verts = np.array([[float(c) for c in v] for v in vertices(as_cell(body))])
    return (-(re_y @ verts.T)).max(axis=1)


def certify(grid: TransformGrid, body, orders: Sequence[float], tol: float = TOL) -> list[GrowthCertificate]:
    if grid.values is None:
        raise ValueError("evaluate the grid first")
    pts = grid.points
    norm = np.sqrt((np.abs(pts) ** 2).sum(axis=1))
    sigma = support_values(body, pts.real)
    with np.errstate(divide="ignore"):
        log_psi = np.log(np.abs(grid.values))
    inner = grid.inner_mask()
    out = []
    for m in orders:
        w = np.exp(log_psi - m * np.log1p(norm) - sigma)
        lo, hi = float(w[inner].max()), float(w[~inner].max())
        verdict = "BOUNDED" if hi <= (1 + tol) * lo else "UNBOUNDED"
        out.append(GrowthCertificate(float(m), float(w.max()), lo, hi, verdict))
    return out


def growth_certificate(phi: TestFunction, ymax: float = 20.0, count: int = 41, orders: Sequence[float] = (0,),
                       quad_points: int = 64, support=None, tol: float = TOL) -> list[GrowthCertificate]:
    """Certificates per order; `support` overrides the body whose sigma is used (default: phi's own)."""
    grid = TransformGrid(phi.dim, ymax, count)
    grid.evaluate(phi, quad_points)
    return certify(grid, phi.body() if support is None else support, orders, tol)
