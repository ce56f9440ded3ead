"""Sample sets and comparison of computed stalks with a predicted object."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from ..cohomology.graded import GradedDims
from ..exactgeom.arrangement import Arrangement
from ..exactgeom.linalg import vec
from ..exactgeom.sets import PLSet
from ..sheafobj.objects import ConstructibleObject, stalk

WITNESS, RANDOM, USER = "witness", "random", "user"


def fmt_point(p) -> list[str]:
    return [str(Fraction(v)) for v in p]


@dataclass
class StalkSampleSet:
    points: list = field(default_factory=list)
    tags: list = field(default_factory=list)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @classmethod
    def build(cls, dim: int, sets: Iterable[PLSet] = (), n_random: int = 0, seed: int = 42,
              user: Iterable = (), scale: int = 3) -> "StalkSampleSet":
        """A witness in every face of the arrangement of the given sets, then random points.

        Random coordinates are p/q with |p/q| <= scale and 1 <= q <= 4; the
        denominator bound doubles whenever new points become hard to find.
        """
        out = cls()
        seen = set()

        def push(p, tag):
            p = tuple(vec(p))
            if p not in seen:
                seen.add(p)
                out.points.append(p)
                out.tags.append(tag)

        sets = list(sets)
        arr = Arrangement.of_sets(dim, *sets) if sets else Arrangement(dim)
        for face in sorted(arr.faces(), key=lambda f: f.signs):
            push(face.witness, WITNESS)
        for p in user:
            push(p, USER)
        rng = random.Random(seed)
        added, misses, qmax = 0, 0, 4
        while added < n_random:
            pt = []
            for _ in range(dim):
                q = rng.randint(1, qmax)
                pt.append(Fraction(rng.randint(-scale * q, scale * q), q))
            before = len(out.points)
            push(pt, RANDOM)
            if len(out.points) > before:
                added += 1
                misses = 0
            else:
                misses += 1
                if misses > 50:  # low dimension: allow finer denominators
                    qmax, misses = 2 * qmax, 0
        return out

    @classmethod
    def for_object(cls, obj: ConstructibleObject, n_random: int = 0, seed: int = 42, **kw) -> "StalkSampleSet":
        return cls.build(obj.dim, [t.set for t in obj.terms], n_random, seed, **kw)


@dataclass
class VerificationReport:
    scenario: str
    status: str  # PASS | FAIL | ERROR
    samples: int
    seed: int
    counterexample: Optional[dict] = None
    wall_time: float = 0.0
    detail: str = ""
    expected: str = "PASS"  # negative controls expect FAIL

    def to_dict(self, include_time: bool = False) -> dict:
        d = {
            "scenario": self.scenario,
            "status": self.status,
            "samples": self.samples,
            "seed": self.seed,
            "counterexample": self.counterexample,
            "detail": self.detail,
            "expected": self.expected,
        }
        if include_time:
            d["wall_time"] = round(self.wall_time, 3)
        return d

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    @property
    def as_expected(self) -> bool:
        if self.expected == "FAIL":
            return self.status == "FAIL" and self.counterexample is not None
        return self.status == self.expected


def counterexample(point, expected: GradedDims, actual: GradedDims) -> dict:
    return {"point": fmt_point(point), "expected": expected.to_dict(), "actual": actual.to_dict()}


def match_predicted(evaluator: Callable, predicted, samples: StalkSampleSet, name: str = "",
                    seed: int = 0) -> VerificationReport:
    """PASS iff evaluator(p) equals the predicted stalk at every sample.

    `predicted` is a ConstructibleObject or a callable point -> GradedDims.
    """
    expect = predicted if callable(predicted) else (lambda p: stalk(predicted, p))
    start = time.perf_counter()
    n = 0
    try:
        for p in samples.points:
            want = expect(p)
            got = evaluator(p)
            n += 1
            if got != want:
                return VerificationReport(name, "FAIL", n, seed, counterexample(p, want, got),
                                          time.perf_counter() - start)
    except Exception as exc:  # surfaced as ERROR with context
        return VerificationReport(name, "ERROR", n, seed, None, time.perf_counter() - start,
                                  f"{type(exc).__name__}: {exc}")
    return VerificationReport(name, "PASS", n, seed, None, time.perf_counter() - start)
