"""Named scenarios: an evaluator, a predicted answer and a sampling policy.

Predictions are assembled from convexcalc (support functions, recession and
polar cones) and never from the evaluators, so the two sides only meet at hc.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from ..cohomology.graded import GradedDims
from ..convexcalc.cones import (
    as_cell,
    cone_over_embedding,
    extended_pairing,
    interior,
    polar_cone,
    recession_cone,
)
from ..exactgeom.sets import PLSet, embedding_minus_one, image_injective, negate, product, subtract
from ..sheafobj.objects import ConstructibleObject, constant, external, shift, stalk, tensor
from ..transforms.evaluators import (
    conification_stalk,
    convolution_stalk,
    fourier_sato_stalk,
    kernel_compose_stalk,
    nh_fourier_stalk,
)
from ..transforms.matching import StalkSampleSet, VerificationReport, match_predicted
from ..transforms.quadric import quadric_prediction, quadric_surrogate
from ..transforms.tamarkin import PairingTKernel, SemilinearTKernel, t_nonneg, tcomp_stalk, tilde, ttens_stalk
from .corpus import CLOSED_BODIES, CONES, OPEN_BODIES, cone_cell, corpus

ONE = GradedDims({0: 1})
ZERO = GradedDims()


class UnknownScenarioError(KeyError):
    pass


@dataclass
class Setup:
    """What a scenario needs at run time."""

    dim: int
    evaluator: Callable
    predicted: object  # ConstructibleObject or point -> GradedDims
    sets: Sequence[PLSet] = ()
    user: Sequence = ()
    scale: int = 3


@dataclass(frozen=True)
class Scenario:
    name: str
    kind: str  # fs | nhfs | cone | conv | ttens | tcomp | set
    build: Callable[[], Setup]
    notes: str = ""
    samples: int = 100
    negative_control: bool = False
    pairing: Optional[tuple] = None


# predictions


def fex_prediction(cone, closed: bool, pairing=None) -> ConstructibleObject:
    """k on the interior of the polar (closed cone), or on the antipodal polar shifted by -n (open cone)."""
    cell = as_cell(cone)
    polar = polar_cone(cell.closure(), pairing)
    if closed:
        return constant(interior(polar))
    return constant(negate(PLSet(cell.dim, [polar])), -cell.dim)


def _closed_cone_over(a: PLSet):
    return as_cell(cone_over_embedding(a).closure())


def conefou_closed_prediction(a: PLSet) -> ConstructibleObject:
    """{y in Int(polar of the recession cone), t >= -sigma_A(-y)} in degree 0."""
    n = a.dim
    lam = interior(polar_cone(recession_cone(as_cell(a))))
    below = interior(polar_cone(_closed_cone_over(a), extended_pairing(None, n)))
    return constant(subtract(product(lam, PLSet.full(1)), below))


def conefou_open_prediction(a: PLSet) -> ConstructibleObject:
    """{(y, t) : -y in the polar of the recession cone, t >= sigma_A(y)} in degree n."""
    n = a.dim
    polar = polar_cone(_closed_cone_over(a), extended_pairing(None, n))
    return constant(negate(PLSet(n + 1, [polar])), -n)


def qcone_set(r: int = 0) -> PLSet:
    """{x1^2 <= x2^2, x3 = ... = 0} with r trailing zero coordinates."""
    zeros = "".join(f"; x{3 + i} = 0" for i in range(r))
    return PLSet.parse(2 + r, "x2 - x1 >= 0; x2 + x1 >= 0" + zeros, "x2 - x1 <= 0; x2 + x1 <= 0" + zeros)


def qcone_prediction(r: int = 0) -> ConstructibleObject:
    """{y1^2 >= y2^2} (times the free y3..) in degree 1."""
    return constant(PLSet.parse(2 + r, "y1 - y2 >= 0; y1 + y2 >= 0".replace("y", "x"),
                                "x1 - x2 <= 0; x1 + x2 <= 0"), -1)


# registry construction


def _fex(name, rows, closed, pairing=None):
    def build():
        cone = cone_cell(rows, strict=not closed)
        f = constant(PLSet(cone.dim, [cone]))
        pred = fex_prediction(cone, closed, pairing)
        return Setup(cone.dim, lambda y: fourier_sato_stalk(f, y, pairing), pred,
                     sets=[t.set for t in pred.terms] + [PLSet(cone.dim, [cone])])
    kind = "closed proper" if closed else "open"
    return Scenario(name, "fs", build, f"Fourier-Sato transform of an {kind} convex cone",
                    samples=200, pairing=None if pairing is None else tuple(map(tuple, pairing)))


def _conefou(name, body, closed):
    def build():
        f = constant(body)
        pred = conefou_closed_prediction(body) if closed else conefou_open_prediction(body)
        return Setup(body.dim + 1, lambda p: nh_fourier_stalk(f, p), pred, sets=[t.set for t in pred.terms])
    what = "closed line-free" if closed else "open"
    return Scenario(name, "nhfs", build, f"non-homogeneous transform of an {what} convex body", samples=200)


def _tamarkin(name, body, closed, negative=False):
    def build():
        pred = conefou_closed_prediction(body) if closed else conefou_open_prediction(body)
        unit = t_nonneg(body.dim)
        return Setup(body.dim + 1, lambda p: ttens_stalk(pred, unit, p), pred, sets=[t.set for t in pred.terms])
    return Scenario(name, "ttens", build, "transform prediction is torsion free under k_{t>=0}")


def _fif_restrict(name, f):
    n = f.dim
    return Scenario(name, "nhfs", lambda: Setup(
        n, lambda y: nh_fourier_stalk(f, tuple(y) + (0,)), lambda y: fourier_sato_stalk(f, y),
        sets=[t.set for t in f.terms]), "t = 0 slice of the non-homogeneous transform")


def _negative_t(s):
    s = Fraction(s[0])
    return s if s < 0 else -s - 1


def _fif_vanish(name, f):
    n = f.dim
    return Scenario(name, "nhfs", lambda: Setup(
        1, lambda s: nh_fourier_stalk(f, (0,) * n + (_negative_t(s),)), lambda s: ZERO),
        "vanishing over y = 0, t < 0 (samples s map to t = s or -s - 1)")


def _fif_conic(name, f):
    n = f.dim

    def predicted(p):
        return fourier_sato_stalk(f, p[:n]) if p[n] >= 0 else ZERO
    return Scenario(name, "nhfs", lambda: Setup(
        n + 1, lambda p: nh_fourier_stalk(f, p), predicted,
        sets=[product(t.set, PLSet.full(1)) for t in f.terms] + [PLSet.parse(n + 1, f"x{n + 1} = 0")]),
        "conic input: transform is the homogeneous one times k_{t>=0}")


def _conic_criterion(name, f):
    n = f.dim
    return Scenario(name, "cone", lambda: Setup(
        n, lambda x: conification_stalk(f, x), f, sets=[t.set for t in f.terms], user=[(0,) * n]),
        "conification fixes a conic object")


def _iaf(name, body):
    def build():
        n = body.dim
        f = constant(image_injective(embedding_minus_one(n), body))
        pred = constant(cone_over_embedding(body), 1)
        return Setup(n + 1, lambda x: conification_stalk(f, x), pred,
                     sets=[t.set for t in pred.terms] + [t.set for t in f.terms], user=[(0,) * (n + 1)])
    return Scenario(name, "cone", build, "conification of k_A placed at s = -1 is the cone over A shifted by 1")


def _phi(name, f):
    n = f.dim

    def build():
        lk = SemilinearTKernel(tilde(f), 0, n)
        pk = PairingTKernel(n)
        return Setup(n + 1, lambda p: tcomp_stalk(lk, pk, p), lambda p: nh_fourier_stalk(f, p),
                     sets=[product(t.set, PLSet.full(1)) for t in f.terms])
    return Scenario(name, "tcomp", build, "composition of f~ with k_{<x,y> <= t} is the non-homogeneous transform")


def _compot(name, k12, k23):
    # X1 is a point, X2 = X3 = Q
    def build():
        l12 = SemilinearTKernel(tilde(k12), 0, 1)
        l23 = SemilinearTKernel(tilde(k23), 1, 1)

        def predicted(p):
            base = kernel_compose_stalk(k12, k23, (0, 1, 1), p[:1])
            return base if p[1] >= 0 else ZERO
        return Setup(2, lambda p: tcomp_stalk(l12, l23, p), predicted,
                     sets=[product(PLSet.full(1), PLSet.parse(1, "x1 >= 0"))])
    return Scenario(name, "tcomp", build, "composition of tilde kernels is the tilde of the composition")


def _convf(name, f, g, closed_cone_f, closed_cone_g):
    n = f.dim

    def build():
        fh = fex_prediction(closed_cone_f, True)
        gh = fex_prediction(closed_cone_g, True)
        fg = tensor(f, g)
        return Setup(n, lambda y: fourier_sato_stalk(fg, y), lambda y: convolution_stalk(fh, gh, y).shifted(n),
                     sets=[t.set for t in fh.terms + gh.terms])
    return Scenario(name, "conv", build, "transform of a tensor product is the convolution of transforms, shifted by n")


def _fouetens(name, f, g):
    n1 = f.dim

    def build():
        fg = external(f, g)
        return Setup(fg.dim, lambda y: fourier_sato_stalk(fg, y),
                     lambda y: fourier_sato_stalk(f, y[:n1]) * fourier_sato_stalk(g, y[n1:]),
                     sets=[t.set for t in fg.terms])
    return Scenario(name, "fs", build, "transform of an external product is the product of transforms")


def _qcone(name, r):
    def build():
        f = constant(qcone_set(r))
        pred = qcone_prediction(r)
        return Setup(2 + r, lambda y: fourier_sato_stalk(f, y), pred, sets=[t.set for t in pred.terms])
    return Scenario(name, "fs", build, "Fourier-Sato transform of the quadratic cone", samples=200)


PYTHAGOREAN = [(5, 3, -4), (5, -3, -4), (-5, 3, -4), (-5, -3, -4), (13, 5, -12), (-13, -12, -5), (5, 4, -3),
               (17, 8, -15), (Fraction(5, 2), Fraction(3, 2), -2)]


def _quadric(name):
    def build():
        user = []
        for y1, y2, t in PYTHAGOREAN:
            for dt in (0, Fraction(1, 100), Fraction(-1, 100)):
                user.append((y1, y2, t + dt))
        user += [(1, 1, 0), (1, -1, Fraction(-1, 10)), (2, 2, Fraction(-1, 1000)), (0, 0, 0), (0, 0, -1)]

        def evaluator(p):
            return nh_fourier_stalk(constant(quadric_surrogate(p[:2], p[2])), p)

        def predicted(p):
            return GradedDims({1: 1}) if quadric_prediction(p[:2], p[2]) else ZERO
        lines = [PLSet.parse(3, "x1 - x2 = 0"), PLSet.parse(3, "x1 + x2 = 0"), PLSet.parse(3, "x3 = 0")]
        return Setup(3, evaluator, predicted, sets=lines, user=user)
    return Scenario(name, "nhfs", build, "quadric x1^2 - x2^2 <= 1 through a per-sample polygonal model",
                    samples=200)


def _gammahk(name, body):
    def build():
        from ..convexcalc.cones import gammaHK_sides
        lhs, rhs = gammaHK_sides(body)
        return Setup(body.dim + 1, lambda p: ONE if lhs.contains(p) else ZERO, constant(rhs), sets=[lhs, rhs])
    return Scenario(name, "set", build, "polar of the closed cone over A against the vertex description")


def _negative_shift():
    def build():
        cone = cone_cell(CONES["dim1"])
        f = constant(PLSet(1, [cone]))
        pred = shift(fex_prediction(cone, True), 1)
        return Setup(1, lambda y: fourier_sato_stalk(f, y), pred, sets=[t.set for t in pred.terms])
    return Scenario("negative-shift-bug", "fs", build, "closed half-line with a prediction off by one degree",
                    samples=50, negative_control=True)


def _negative_region():
    def build():
        body = CLOSED_BODIES["box"]
        wrong = PLSet.parse(2, "x1 >= 0; x1 <= 2; x2 >= 0; x2 <= 1")
        pred = conefou_closed_prediction(wrong)
        f = constant(body)
        return Setup(3, lambda p: nh_fourier_stalk(f, p), pred, sets=[t.set for t in pred.terms])
    return Scenario("negative-perturbed-region", "nhfs", build, "unit square checked against the prediction for a 2x1 box",
                    samples=50, negative_control=True)


def _negative_torsion():
    def build():
        g = constant(PLSet.parse(2, "x2 <= 0"))
        unit = t_nonneg(1)
        return Setup(2, lambda p: ttens_stalk(g, unit, p), g, sets=[t.set for t in g.terms])
    return Scenario("negative-tamarkin-torsion", "ttens", build, "k_{t<=0} is not torsion free",
                    samples=50, negative_control=True)


def default_registry() -> dict[str, Scenario]:
    out: list[Scenario] = []
    for key, rows in CONES.items():
        out.append(_fex(f"fex-closed-cone-{key}", rows, True))
    for key, rows in CONES.items():
        out.append(_fex(f"fex-open-cone-{key}", rows, False))
    out.append(_fex("fex-closed-cone-dim2-pairing", CONES["dim2"], True, pairing=[[1, 1], [0, 1]]))
    out.append(_qcone("qcone-p1q1", 0))
    out.append(_qcone("qcone-p1q1r1", 1))
    for key, body in CLOSED_BODIES.items():
        out.append(_conefou(f"conefou-closed-{key}", body, True))
    for key, body in OPEN_BODIES.items():
        out.append(_conefou(f"conefou-open-{key}", body, False))
    out.append(_quadric("quadric-p1q1-c1"))
    for key, body in CLOSED_BODIES.items():
        out.append(_gammahk(f"gammahk-{key}", body))
    objs = corpus()
    for key, (f, _) in objs.items():
        out.append(_fif_restrict(f"fif-restrict-{key}", f))
        out.append(_fif_vanish(f"fif-vanish-{key}", f))
    for key, (f, conic) in objs.items():
        if conic:
            out.append(_fif_conic(f"fif-conic-{key}", f))
            out.append(_conic_criterion(f"conic-criterion-{key}", f))
    for key in ("interval", "box", "point", "shifted-orthant", "segment"):
        out.append(_iaf(f"iaf-closed-{key}", CLOSED_BODIES[key]))
    for key in ("box", "halfline"):
        out.append(_iaf(f"iaf-open-{key}", OPEN_BODIES[key]))
    for key, body in CLOSED_BODIES.items():
        out.append(_tamarkin(f"tamarkin-conefou-closed-{key}", body, True))
    for key, body in OPEN_BODIES.items():
        out.append(_tamarkin(f"tamarkin-conefou-open-{key}", body, False))
    for key in ("interval", "halfline-open", "sum-shifted", "halfopen", "square", "mixed"):
        out.append(_phi(f"phi-{key}", objs[key][0]))
    out.append(_compot("compot-toy-interval", constant(PLSet.parse(1, "x1 >= 0; x1 <= 1")),
                       constant(PLSet.parse(2, "x1 <= x2"))))
    out.append(_compot("compot-toy-open", constant(PLSet.parse(1, "x1 > 0; x1 < 2")),
                       constant(PLSet.parse(2, "x2 - x1 >= 0; x2 - x1 <= 1"))))
    half = lambda s: PLSet.parse(1, s)  # noqa: E731
    out.append(_convf("convf-dim1", constant(half("x1 >= 0")), constant(half("x1 <= 0")),
                      cone_cell([(-1,)]), cone_cell([(1,)])))
    out.append(_convf("convf-dim2", constant(PLSet(2, [cone_cell(CONES["dim2"])])),
                      constant(PLSet(2, [cone_cell([(1, 0), (0, 1)])])),
                      cone_cell(CONES["dim2"]), cone_cell([(1, 0), (0, 1)])))
    for a, b in (("halfline-closed", "halfline-open"), ("interval", "origin"), ("quadrant", "halfopen")):
        out.append(_fouetens(f"fouetens-{a}-{b}", objs[a][0], objs[b][0]))
    out += [_negative_shift(), _negative_region(), _negative_torsion()]
    names = [s.name for s in out]
    if len(set(names)) != len(names):
        raise ValueError("duplicate scenario names")
    return {s.name: s for s in out}


_REGISTRY: Optional[dict[str, Scenario]] = None


def registry() -> dict[str, Scenario]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = default_registry()
    return _REGISTRY


def run_scenario(name: str, seed: int = 42, samples: Optional[int] = None,
                 scenarios: Optional[Mapping[str, Scenario]] = None) -> VerificationReport:
    reg = registry() if scenarios is None else scenarios
    if name not in reg:
        raise UnknownScenarioError(name)
    sc = reg[name]
    n_random = sc.samples if samples is None else samples
    expected = "FAIL" if sc.negative_control else "PASS"
    try:
        setup = sc.build()
        pts = StalkSampleSet.build(setup.dim, setup.sets, n_random, seed, user=setup.user, scale=setup.scale)
    except Exception as exc:
        return VerificationReport(name, "ERROR", 0, seed, None, 0.0, f"{type(exc).__name__}: {exc}", expected)
    report = match_predicted(setup.evaluator, setup.predicted, pts, name, seed)
    report.expected = expected
    return report


def _run_named(args):
    name, seed, samples = args
    return run_scenario(name, seed, samples)


def run_all(seed: int = 42, samples: Optional[int] = None, names: Optional[Iterable[str]] = None,
            processes: Optional[int] = None,
            scenarios: Optional[Mapping[str, Scenario]] = None) -> list[VerificationReport]:
    """Run scenarios in registry order; workers only change wall time, not results."""
    reg = registry() if scenarios is None else scenarios
    todo = list(reg) if names is None else list(names)
    if processes and processes > 1 and scenarios is None:
        with ProcessPoolExecutor(processes) as pool:
            return list(pool.map(_run_named, [(n, seed, samples) for n in todo]))
    return [run_scenario(n, seed, samples, reg) for n in todo]


def all_as_expected(reports: Iterable[VerificationReport]) -> bool:
    return all(r.as_expected for r in reports)


def reports_json(reports: Iterable[VerificationReport], include_time: bool = False) -> str:
    return json.dumps([r.to_dict(include_time) for r in reports], sort_keys=True, indent=2) + "\n"
