"""Graded dimension vectors: the observable data of a stalk."""

from __future__ import annotations

from typing import Iterable, Mapping


class GradedDims:
    """Degree -> dimension, with zero entries dropped.  Immutable."""

    __slots__ = ("_d",)

    def __init__(self, dims: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = dims.items() if isinstance(dims, Mapping) else dims
        d: dict[int, int] = {}
        for k, v in items:
            k, v = int(k), int(v)
            if v < 0:
                raise ValueError(f"negative dimension {v} in degree {k}")
            if v:
                d[k] = d.get(k, 0) + v
        self._d = dict(sorted(d.items()))

    @classmethod
    def zero(cls) -> "GradedDims":
        return cls()

    @classmethod
    def unit(cls, degree: int = 0, rank: int = 1) -> "GradedDims":
        return cls({degree: rank})

    def __getitem__(self, k: int) -> int:
        return self._d.get(k, 0)

    def items(self):
        return self._d.items()

    def degrees(self) -> list[int]:
        return list(self._d)

    def __bool__(self) -> bool:
        return bool(self._d)

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedDims):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self == GradedDims(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._d.items()))

    def __add__(self, other: "GradedDims") -> "GradedDims":
        out = dict(self._d)
        for k, v in other._d.items():
            out[k] = out.get(k, 0) + v
        return GradedDims(out)

    def __mul__(self, other: "GradedDims") -> "GradedDims":
        """Graded tensor product: degrees add, dimensions multiply."""
        out: dict[int, int] = {}
        for a, x in self._d.items():
            for b, y in other._d.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return GradedDims(out)

    def shifted(self, d: int) -> "GradedDims":
        """The dims of M[d]: degree k of M lands in degree k - d."""
        return GradedDims({k - d: v for k, v in self._d.items()})

    def scaled(self, r: int) -> "GradedDims":
        return GradedDims({k: v * r for k, v in self._d.items()})

    def euler(self) -> int:
        return sum((-1) ** (k % 2) * v for k, v in self._d.items())

    def total(self) -> int:
        return sum(self._d.values())

    def to_dict(self) -> dict[str, int]:
        return {str(k): v for k, v in self._d.items()}

    @classmethod
    def from_dict(cls, d: Mapping) -> "GradedDims":
        return cls({int(k): v for k, v in d.items()})

    def __repr__(self):
        return f"GradedDims({self._d})"


def dsum(items: Iterable[GradedDims]) -> GradedDims:
    out = GradedDims()
    for g in items:
        out = out + g
    return out
