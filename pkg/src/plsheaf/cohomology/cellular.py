"""Compactly supported cohomology from the face stratification of an arrangement.

Refine a locally closed union S of cells along all of its constraint
hyperplanes.  S becomes a union of relatively open faces, each homeomorphic to
R^d, and filtering S by face dimension gives a spectral sequence whose E1 page
is the cochain complex

    C^d = Q^{d-faces of S},   delta(F*) = sum over d+1-faces G of S with F a facet of G
                                         of [G:F] G*.

Each graded piece has cohomology in a single degree, so the sequence stops at
E2 and the complex computes H*_c(S).  The incidence number [G:F] compares the
orientation of G with (inward vector from F, orientation of F).
"""

from __future__ import annotations

from collections import defaultdict
from typing import Optional

from ..exactgeom.arrangement import Arrangement, Face
from ..exactgeom.linalg import det, integer_rank
from ..exactgeom.sets import PLSet
from .graded import GradedDims


class NotLocallyClosedError(ValueError):
    def __init__(self, message, cells=()):
        super().__init__(message)
        self.cells = list(cells)


def incidence(face: Face, facet: Face) -> int:
    """[face : facet] in {+1, -1}; facet must be a facet of face."""
    inward = tuple(g - f for g, f in zip(face.witness, facet.witness))
    rows = [face.coords(inward)] + [face.coords(b) for b in facet.basis]
    d = det(rows)
    if d == 0:
        raise ArithmeticError("degenerate incidence")
    return 1 if d > 0 else -1


def facet_pairs(faces: list[Face]):
    """All (F, G) with F a facet of G, both in the list, as index pairs."""
    by_dim: dict[int, list[int]] = defaultdict(list)
    for i, f in enumerate(faces):
        by_dim[f.dim].append(i)
    pairs = []
    for d, lows in by_dim.items():
        highs = by_dim.get(d + 1, [])
        for i in lows:
            fi = faces[i]
            for j in highs:
                if fi.below(faces[j]):
                    pairs.append((i, j))
    return pairs


def cochain_complex(faces: list[Face]):
    """Sparse coboundary rows: {dim: [(row index map), ...]} keyed by source face."""
    index = {}
    counts: dict[int, int] = defaultdict(int)
    for f in faces:
        index[f.signs] = counts[f.dim]
        counts[f.dim] += 1
    rows: dict[int, dict[int, dict[int, int]]] = defaultdict(lambda: defaultdict(dict))
    for i, j in facet_pairs(faces):
        f, g = faces[i], faces[j]
        rows[f.dim][index[f.signs]][index[g.signs]] = incidence(g, f)
    return dict(counts), rows


def _ranks(counts, rows) -> dict[int, int]:
    return {d: integer_rank(list(rows[d].values())) if d in rows else 0 for d in counts}


def cohomology_of_faces(faces: list[Face]) -> GradedDims:
    counts, rows = cochain_complex(faces)
    ranks = _ranks(counts, rows)
    return GradedDims({d: counts[d] - ranks.get(d, 0) - ranks.get(d - 1, 0) for d in counts})


def locally_closed_obstruction(s: PLSet, arr: Optional[Arrangement] = None) -> list[int]:
    """Indices of cells of s meeting the closure of (closure(s) minus s); empty iff locally closed."""
    arr = arr or Arrangement.of_sets(s.dim, s)
    inside = {f.signs: f for f in arr.faces_in(s)}
    around = [f for f in arr.faces_in(s.closure()) if f.signs not in inside]
    bad = [f for f in inside.values() if any(f.below(g) for g in around)]
    cells = []
    for k, cell in enumerate(s.cells):
        allowed = arr.allowed_signs(cell)
        if any(all(f.signs[h] in ok for h, ok in allowed.items()) for f in bad):
            cells.append(k)
    return cells


def hc(s: PLSet, check: bool = True) -> GradedDims:
    """Graded dimensions of H*_c(s; Q) for a locally closed semilinear set."""
    if s.is_empty():
        return GradedDims()
    arr = Arrangement.of_sets(s.dim, s)
    if check and len(s.cells) > 1:
        # a single cell is always locally closed; unions need the test
        bad = locally_closed_obstruction(s, arr)
        if bad:
            raise NotLocallyClosedError(f"set is not locally closed; obstructing cells {bad}", bad)
    return cohomology_of_faces(arr.faces_in(s))


def coboundary_squares_to_zero(faces: list[Face]) -> bool:
    counts, rows = cochain_complex(faces)
    for d, table in rows.items():
        nxt = rows.get(d + 1, {})
        for src, targets in table.items():
            acc: dict[int, int] = defaultdict(int)
            for mid, a in targets.items():
                for tgt, b in nxt.get(mid, {}).items():
                    acc[tgt] += a * b
            if any(acc.values()):
                return False
    return True
