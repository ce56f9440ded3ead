import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from plsheaf.pwnum import (
    TestFunction,
    TransformGrid,
    box_indicator_oracle,
    growth_certificate,
    laplace_grid,
    laplace_numeric,
    quadrature_rule,
    simplex_indicator_oracle,
    simplex_volume,
)

INTERVAL = TestFunction.cube(1, 1, "indicator")


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_interval_examples():
    assert rel(laplace_numeric(INTERVAL, [1.0]), 2 * math.sinh(1)) <= 1e-10
    assert rel(laplace_numeric(INTERVAL, [0.0]), 2.0) <= 1e-10
    assert abs(laplace_numeric(INTERVAL, [1j * math.pi])) <= 1e-10


@pytest.mark.parametrize("dim, count", [(1, 41), (2, 9)])
def test_box_oracle_on_grid(dim, count):
    grid = TransformGrid(dim, 20.0, count)
    pts = grid.points
    pts = pts[np.sqrt((np.abs(pts) ** 2).sum(axis=1)) <= 20 + 1e-12]
    phi = TestFunction.cube(1, dim, "indicator")
    vals = laplace_grid(phi, pts, 64)
    worst = max(rel(v, box_indicator_oracle([-1] * dim, [1] * dim, y)) for v, y in zip(vals, pts))
    assert worst <= 1e-10


def test_shifted_box_oracle():
    phi = TestFunction.box([0, Fraction(-1, 2)], [Fraction(3, 2), 1], "indicator")
    for y in ([3 + 2j, -1j], [-4.5, 7.0], [0, 2 - 5j]):
        assert rel(laplace_numeric(phi, y), box_indicator_oracle([0, -0.5], [1.5, 1], y)) <= 1e-10


@given(st.lists(st.complex_numbers(max_magnitude=8, allow_nan=False, allow_infinity=False), min_size=2, max_size=2))
def test_simplex_oracle(y):
    zs = [0] + list(y)
    gaps = min(abs(a - b) for i, a in enumerate(zs) for b in zs[i + 1:])
    if gaps < 0.5:
        return  # divided differences lose digits when nodes collide
    phi = TestFunction.standard_simplex(1, 2, "indicator")
    assert rel(laplace_numeric(phi, y), simplex_indicator_oracle(1, y)) <= 1e-10


def test_quadrature_weights_integrate_volume():
    tri = TestFunction.simplex([[0, 0], [2, 0], [0, 1]], "indicator")
    assert rel(laplace_numeric(tri, [0, 0]), simplex_volume([[0, 0], [2, 0], [0, 1]])) <= 1e-12
    with pytest.raises(ValueError):
        quadrature_rule(INTERVAL, 4)


def test_quadrature_convergence():
    y = [12 + 15j]
    exact = box_indicator_oracle([-1], [1], y)
    errs = [rel(laplace_numeric(INTERVAL, y, q), exact) for q in (8, 16, 32, 64)]
    for a, b in zip(errs, errs[1:]):
        assert b <= 1.1 * a or b <= 1e-13
    assert errs[-1] <= 1e-10 < errs[0]


def test_bump_on_interval_is_bounded():
    certs = growth_certificate(TestFunction.cube(1, 1, "bump"), 20, 41, [0, 1, 2, 3, 4])
    assert [c.verdict for c in certs] == ["BOUNDED"] * 5


def test_indicator_orders():
    certs = growth_certificate(INTERVAL, 20, 41, [-2, -1, 0, 1, 4])
    assert [c.verdict for c in certs] == ["UNBOUNDED", "BOUNDED", "BOUNDED", "BOUNDED", "BOUNDED"]


def test_negative_control_shrunken_support():
    support = TestFunction.cube(Fraction(1, 2), 1).body()
    certs = growth_certificate(INTERVAL, 80, 41, [0, 1, 2, 3, 4], support=support)
    assert all(c.verdict == "UNBOUNDED" for c in certs)


@pytest.mark.parametrize("kind", ["bump", "indicator"])
def test_square(kind):
    certs = growth_certificate(TestFunction.cube(1, 2, kind), 20, 9, [0, 1, 2], quad_points=32)
    assert all(c.verdict == "BOUNDED" for c in certs)


def test_grid_validation():
    with pytest.raises(ValueError):
        TransformGrid(1, 20.0, 40)
    with pytest.raises(ValueError):
        TransformGrid(1, 0.0, 41)
    g = TransformGrid(1, 4.0, 5)
    assert g.points.shape == (25, 1) and g.inner_mask().sum() == 9
