"""A second, independent route to H*_c through a compact simplicial pair.

Clip S to the open sup-norm box (-R, R)^n, where R exceeds every vertex of
the arrangement of S's hyperplanes together with the coordinate hyperplanes.
Then H*_c(S) = H*(X, A) with X = closure(S ∩ box) and A = X minus (S ∩ box).
Both are unions of bounded faces, which are triangulated by pulling (each
face is coned from its first vertex in a global order, no new vertices).
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Optional

from ..exactgeom.arrangement import Arrangement
from ..exactgeom.linalg import integer_rank, rank, solve
from ..exactgeom.lp import maximize_from
from ..exactgeom.sets import PLSet, intersect, subtract
from .graded import GradedDims


def arrangement_vertices(s: PLSet) -> list[tuple]:
    """Vertices of the arrangement of s's hyperplanes and the coordinate hyperplanes."""
    n = s.dim
    planes = {}
    for c in s.constraints():
        normal, rhs, _ = c.hyperplane()
        planes[(normal, rhs)] = None
    for i in range(n):
        planes[(tuple(int(i == j) for j in range(n)), 0)] = None
    planes = list(planes)
    verts = set()
    for combo in combinations(planes, n):
        rows = [a for a, _ in combo]
        if rank(rows, n) == n:
            verts.add(solve(rows, [Fraction(b) for _, b in combo], n))
    return sorted(verts)


def critical_radius(s: PLSet) -> Fraction:
    """Sup-norm radius beyond every arrangement vertex, plus one."""
    verts = arrangement_vertices(s)
    return max((max((abs(v) for v in x), default=Fraction(0)) for x in verts), default=Fraction(0)) + 1


class SimplicialPair:
    """Simplices as sorted vertex-index tuples; `sub` marks simplices of the subcomplex."""

    def __init__(self, vertices, simplices, sub):
        self.vertices = list(vertices)
        self.simplices = list(simplices)
        self.sub = set(sub)
        self._check()

    def _check(self):
        have = set(self.simplices)
        for s in self.simplices:
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                if face and face not in have:
                    raise ValueError(f"simplex {s} is missing its face {face}")
                if s in self.sub and face and face not in self.sub:
                    raise ValueError("subcomplex is not closed under faces")

    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def relative(self, k: int) -> list[tuple]:
        return sorted(s for s in self.simplices if len(s) == k + 1 and s not in self.sub)

    def coboundary(self, k: int):
        """Rows of the relative coboundary C^k -> C^{k+1}, one sparse dict per k-simplex."""
        lower = self.relative(k)
        upper = self.relative(k + 1)
        col = {s: i for i, s in enumerate(upper)}
        rows = {s: {} for s in lower}
        for t in upper:
            for i in range(len(t)):
                face = t[:i] + t[i + 1:]
                if face in rows:
                    rows[face][col[t]] = (-1) ** i
        return [rows[s] for s in lower]

    def cohomology(self) -> GradedDims:
        top = self.dimension()
        ranks = {k: integer_rank(self.coboundary(k)) for k in range(top)}
        return GradedDims({k: len(self.relative(k)) - ranks.get(k, 0) - ranks.get(k - 1, 0)
                           for k in range(top + 1)})

    def refine(self) -> "SimplicialPair":
        """Barycentric subdivision; a chain lies in the subcomplex iff its top simplex does."""
        index = {s: i for i, s in enumerate(sorted(self.simplices, key=lambda s: (len(s), s)))}
        verts = [None] * len(index)
        for s, i in index.items():
            pts = [self.vertices[v] for v in s]
            verts[i] = tuple(sum(c) / len(pts) for c in zip(*pts))
        cofaces = defaultdict(list)
        for s in self.simplices:
            for k in range(1, len(s)):
                for f in combinations(s, k):
                    cofaces[f].append(s)
        chains = []
        sub = []

        def grow(chain):
            top = chain[-1]
            chains.append(tuple(sorted(index[c] for c in chain)))
            if top in self.sub:
                sub.append(chains[-1])
            for s in cofaces[top]:
                grow(chain + [s])

        # chains grow upwards from their smallest simplex
        for s in self.simplices:
            grow([s])
        return SimplicialPair(verts, sorted(set(chains)), set(sub))


def _bounded(s: PLSet) -> bool:
    n = s.dim
    for cell in s.cells:
        A, b = [], []
        for c in cell.constraints:
            if c.rel == "eq":
                A += [c.coeffs, tuple(-x for x in c.coeffs)]
                b += [c.rhs, -c.rhs]
            else:
                A.append(c.coeffs)
                b.append(c.rhs)
        for i in range(n):
            for sgn in (1, -1):
                obj = [Fraction(sgn * int(i == j)) for j in range(n)]
                if maximize_from(A, b, obj, cell.witness).status == "unbounded":
                    return False
    return True


def triangulate_pair(bounded_closed: PLSet, sub: PLSet) -> SimplicialPair:
    """Pulling triangulation of a compact semilinear pair (X, A)."""
    if not all(c.is_closed() for c in bounded_closed.cells + sub.cells):
        raise ValueError("triangulate_pair needs closed inputs")
    if not _bounded(bounded_closed):
        raise ValueError("triangulate_pair needs a bounded set")
    n = bounded_closed.dim
    arr = Arrangement.of_sets(n, bounded_closed, sub)
    faces = arr.faces_in(bounded_closed)
    sub_signs = {f.signs for f in arr.faces_in(sub)} if not sub.is_empty() else set()
    by_signs = {f.signs: f for f in faces}
    points = sorted(f.witness for f in faces if f.dim == 0)
    vid = {p: i for i, p in enumerate(points)}
    vsign = {vid[f.witness]: f.signs for f in faces if f.dim == 0}
    verts_of = {f.signs: sorted(v for v, sv in vsign.items() if _below(sv, f.signs)) for f in faces}
    lower = {f.signs: [g.signs for g in faces if g.dim < f.dim and g.below(f)] for f in faces}

    memo: dict[tuple, list[tuple]] = {}

    def tri(signs) -> list[tuple]:
        """Simplices whose relative interior lies in the face."""
        if signs in memo:
            return memo[signs]
        face = by_signs[signs]
        if face.dim == 0:
            out = [(vid[face.witness],)]
        else:
            apex = verts_of[signs][0]
            sa = vsign[apex]
            out = []
            for g in lower[signs]:
                if apex in verts_of[g]:
                    continue
                if _join(sa, g) != signs:
                    continue
                out.extend(tuple(sorted((apex,) + t)) for t in tri(g))
        memo[signs] = out
        return out

    simplices, subs = [], set()
    for f in faces:
        for t in tri(f.signs):
            simplices.append(t)
            if f.signs in sub_signs:
                subs.add(t)
    return SimplicialPair(points, sorted(set(simplices)), subs)


def _below(a, b) -> bool:
    return all(s == 0 or s == t for s, t in zip(a, b))


def _join(a, b) -> tuple:
    return tuple(y if y != 0 else x for x, y in zip(a, b))


def box_pair(s: PLSet, radius: Fraction) -> tuple[PLSet, PLSet]:
    """(closure of s clipped to the open box, the part of that closure outside s)."""
    n = s.dim
    clipped = intersect(s, PLSet.box([-radius] * n, [radius] * n, strict=True))
    total = clipped.closure()
    return total, subtract(total, clipped)


def hc_model(s: PLSet, radius: Optional[Fraction] = None, refinements: int = 0) -> GradedDims:
    """H*_c(s) as relative cohomology of the clipped, triangulated pair."""
    if s.is_empty():
        return GradedDims()
    if s.dim == 0:
        return GradedDims({0: 1})
    r = Fraction(radius) if radius is not None else critical_radius(s)
    total, rest = box_pair(s, r)
    rest_closed = PLSet(s.dim, [c.closure() for c in rest.cells])
    pair = triangulate_pair(total, rest_closed)
    for _ in range(refinements):
        pair = pair.refine()
    return pair.cohomology()
