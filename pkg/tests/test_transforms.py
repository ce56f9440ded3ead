from fractions import Fraction

import numpy as np
import pytest
from conftest import points, rationals
from hypothesis import given, settings
from hypothesis import strategies as st

from plsheaf.cohomology import GradedDims
from plsheaf.exactgeom import PLSet
from plsheaf.sheafobj import SemilinearKernel, constant, external, stalk
from plsheaf.transforms import (
    PairingTKernel,
    SemilinearTKernel,
    StalkSampleSet,
    conification_stalk,
    convolution_stalk,
    fourier_sato_stalk,
    kernel_compose_stalk,
    match_predicted,
    nh_fourier_stalk,
    piece_below,
    quadric_prediction,
    quadric_surrogate,
    stalk_compose,
    t_nonneg,
    tamarkin_check,
    tcomp_stalk,
    ttens_stalk,
)
from plsheaf.verify import corpus

ZERO = GradedDims()
D0 = GradedDims({0: 1})


def K(dim, *texts, d=0):
    return constant(PLSet.parse(dim, *texts), d)


F = Fraction


def test_stalk_compose_examples():
    f = K(1, "x1 >= 0; x1 <= 1")
    k = SemilinearKernel(K(2, "x1 <= x2"), 1, 1)
    assert stalk_compose(f, k, [2]) == D0
    assert stalk_compose(f, k, [F(1, 2)]) == D0
    assert stalk_compose(f, k, [-1]) == ZERO


def test_fourier_sato_examples():
    f = K(1, "x1 >= 0")
    assert [fourier_sato_stalk(f, [y]) for y in (1, 0, -1)] == [D0, ZERO, ZERO]
    assert fourier_sato_stalk(K(1, "x1 > 0"), [-2]) == GradedDims({1: 1})
    # the two-cone |x1| <= |x2| written as the union of its two closed wedges
    q = K(2, "x2 >= x1; x2 >= -x1", "x2 <= x1; x2 <= -x1")
    assert fourier_sato_stalk(q, [1, 0]) == GradedDims({1: 1})


def test_nh_fourier_examples():
    f = K(1, "x1 >= 0; x1 <= 1")
    assert nh_fourier_stalk(f, [1, 0]) == D0
    assert nh_fourier_stalk(f, [1, -1]) == ZERO
    assert nh_fourier_stalk(f, [-1, F(-1, 2)]) == D0
    for obj, _ in corpus().values():
        assert nh_fourier_stalk(obj, [0] * obj.dim + [-1]) == ZERO


def test_conification_examples():
    assert conification_stalk(K(1, "x1 = 1"), [2]) == GradedDims({-1: 1})
    assert conification_stalk(K(1, "x1 = 1"), [-1]) == ZERO
    assert conification_stalk(K(1, "x1 > 0"), [1]) == D0
    assert conification_stalk(K(1, "x1 >= 1; x1 <= 2"), [0]) == ZERO


def test_convolution_examples():
    t = K(1, "x1 >= 0")
    assert convolution_stalk(t, t, [3]) == D0
    assert convolution_stalk(t, t, [-1]) == ZERO
    assert convolution_stalk(K(1, "x1 > 0; x1 < 1"), t, [F(1, 2)]) == ZERO


def test_tamarkin_examples():
    g = K(1, "x1 > 0")
    assert ttens_stalk(g, t_nonneg(0), [1]) == ZERO
    grid = [(F(a, 2), F(b, 2)) for a in range(-6, 7) for b in range(-6, 7)]
    good = K(2, "x2 >= 0", "x2 >= x1")
    assert tamarkin_check(good, grid) == (True, None)
    ok, witness = tamarkin_check(K(2, "x2 <= 0"), grid)
    assert not ok and witness is not None
    assert tamarkin_check(constant(PLSet.empty(2)), grid) == (True, None)


def test_tcomp_of_tilde_kernels():
    # (k12 ⊠ k_{t>=0}) o~ (k23 ⊠ k_{t>=0}) = (k12 o k23) ⊠ k_{t>=0}
    k12 = K(2, "x1 <= x2")
    k23 = K(2, "x1 >= 0; x1 <= x2")
    assert kernel_compose_stalk(k12, k23, (1, 1, 1), (0, 2)) == D0
    assert kernel_compose_stalk(k12, k23, (1, 1, 1), (3, 2)) == ZERO
    l12 = SemilinearTKernel(external(k12, t_nonneg(0)), 1, 1)
    l23 = SemilinearTKernel(external(k23, t_nonneg(0)), 1, 1)
    for x1 in (-2, 0, F(3, 2), 3):
        for x3 in (-1, 0, 2):
            for t in (-1, 0, F(1, 2)):
                want = kernel_compose_stalk(k12, k23, (1, 1, 1), (x1, x3)) if t >= 0 else ZERO
                assert tcomp_stalk(l12, l23, (x1, x3, t)) == want


def test_pairing_tkernel_slices_agree():
    k = PairingTKernel(1)
    for x in (-1, 0, 2):
        for y in (-2, 1):
            for t in (-1, 0, 3):
                assert stalk(k.slice_a([x]), (y, t)) == stalk(k.slice_b([y]), (x, t))


def test_match_predicted_reports():
    f = K(1, "x1 >= 0")
    samples = StalkSampleSet.build(1, [PLSet.parse(1, "x1 > 0")], 20, 3)
    good = match_predicted(lambda y: fourier_sato_stalk(f, y), K(1, "x1 > 0"), samples, "ok", 3)
    assert good.status == "PASS" and good.samples == len(samples) and good.as_expected
    bad = match_predicted(lambda y: fourier_sato_stalk(f, y), K(1, "x1 > 0", d=1), samples, "bad", 3)
    assert bad.status == "FAIL"
    cx = bad.counterexample
    assert cx["expected"] != cx["actual"] and len(cx["point"]) == 1

    def boom(p):
        raise RuntimeError("no")
    err = match_predicted(boom, K(1, "x1 > 0"), samples)
    assert err.status == "ERROR" and "RuntimeError" in err.detail


def test_sample_set_has_witness_per_face_and_is_seeded():
    s = PLSet.parse(2, "x1 >= 0; x2 > 0; x1 + x2 < 2")
    a = StalkSampleSet.build(2, [s], 30, 5)
    b = StalkSampleSet.build(2, [s], 30, 5)
    assert a.points == b.points and len(set(a.points)) == len(a.points)
    assert a.tags.count("random") == 30
    assert any(s.contains(p) for p in a.points)
    one = StalkSampleSet.build(1, [], 200, 1)
    assert len(one) >= 200  # dim 1 has few small fractions; the sampler refines


def _float_sup(z, c):
    # sup over {x1 > 0, x1^2 - x2^2 > c^2} of <x, z> on the branch x = c(cosh u, sinh u)
    u = np.linspace(-40, 40, 400001)
    vals = c * (z[0] * np.cosh(u) + z[1] * np.sinh(u))
    return float(np.max(vals))


@given(st.tuples(rationals, rationals), rationals)
def test_piece_below_against_float_sup(z, t):
    z = (Fraction(z[0]), Fraction(z[1]))
    if z[0] >= -abs(z[1]):
        return
    sup = _float_sup(tuple(float(v) for v in z), 1.0)
    if abs(sup - float(t)) > 1e-6:
        assert piece_below(z, t, 1) == (sup <= float(t))


@settings(max_examples=12)
@given(points(2), rationals)
def test_quadric_surrogate_matches_prediction(y, t):
    p = tuple(y) + (t,)
    got = nh_fourier_stalk(constant(quadric_surrogate(y, t)), p)
    assert got == (GradedDims({1: 1}) if quadric_prediction(y, t) else ZERO)


def test_quadric_prediction_examples():
    assert quadric_prediction((5, 3), -4)
    assert not quadric_prediction((5, 3), F(-401, 100))
    assert quadric_prediction((1, 1), 0) and not quadric_prediction((1, 1), F(-1, 10))
    assert not quadric_prediction((0, 1), 5)


@given(st.sampled_from([o for o, conic in corpus().values() if conic]), st.data())
def test_fif_conic_product_rule(f, data):
    y = data.draw(points(f.dim))
    t = data.draw(rationals)
    want = fourier_sato_stalk(f, y) if t >= 0 else ZERO
    assert nh_fourier_stalk(f, tuple(y) + (t,)) == want


@given(st.sampled_from(list(corpus().values())), st.data())
def test_fif_restriction(entry, data):
    f, _ = entry
    y = data.draw(points(f.dim))
    assert nh_fourier_stalk(f, tuple(y) + (0,)) == fourier_sato_stalk(f, y)


@given(points(2))
def test_external_compatibility(y):
    f1, f2 = K(1, "x1 >= 0"), K(1, "x1 > 0")
    assert fourier_sato_stalk(external(f1, f2), y) == fourier_sato_stalk(f1, y[:1]) * fourier_sato_stalk(f2, y[1:])
    assert stalk(external(f1, f2), y) == stalk(f1, y[:1]) * stalk(f2, y[1:])
