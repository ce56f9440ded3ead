from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from plsheaf.exactgeom import EQ, LE, LT, AffineConstraint, Cell, PLSet

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

small = st.integers(-3, 3)
rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 4))


def points(dim):
    return st.tuples(*[rationals] * dim)


@st.composite
def constraints(draw, dim):
    coeffs = draw(st.lists(small, min_size=dim, max_size=dim).filter(any))
    rel = draw(st.sampled_from([LE, LE, LT, EQ]))
    return AffineConstraint(coeffs, draw(small), rel)


@st.composite
def cells(draw, dim, max_constraints=3):
    cs = draw(st.lists(constraints(dim), min_size=0, max_size=max_constraints))
    return Cell.make(dim, cs)


@st.composite
def plsets(draw, dim, max_cells=2, max_constraints=3):
    cs = draw(st.lists(cells(dim, max_constraints), min_size=0, max_size=max_cells))
    return PLSet(dim, [c for c in cs if c is not None])


@st.composite
def bounded_cells(draw, dim):
    """A box intersected with one extra constraint (nonempty or None)."""
    lo = [draw(st.integers(-2, 1)) for _ in range(dim)]
    hi = [l + draw(st.integers(0, 2)) for l in lo]
    box = PLSet.box(lo, hi).cells[0]
    extra = draw(constraints(dim))
    return Cell.make(dim, list(box.constraints) + [extra.closed()])


@pytest.fixture(scope="session")
def registry():
    from plsheaf.verify import registry as reg
    return reg()


def same(a, b):
    """Exact set equality: both differences are empty."""
    from plsheaf.exactgeom import subtract
    return subtract(a, b).is_empty() and subtract(b, a).is_empty()


@st.composite
def closed_cones(draw, dim, max_rows=4):
    rows = draw(st.lists(st.lists(small, min_size=dim, max_size=dim).filter(any), min_size=1, max_size=max_rows))
    return Cell.make(dim, [AffineConstraint(r, 0, LE) for r in rows])


@st.composite
def closed_bodies(draw, dim, max_rows=4):
    rows = draw(st.lists(st.tuples(st.lists(small, min_size=dim, max_size=dim).filter(any), small),
                         min_size=1, max_size=max_rows))
    return Cell.make(dim, [AffineConstraint(r, b, LE) for r, b in rows])


@pytest.fixture(scope="session")
def seed42_reports():
    """One full run at the default seed, shared by the verify and acceptance tests."""
    from plsheaf.verify import run_all
    return run_all(42)
