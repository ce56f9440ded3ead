"""JSON documents for sets, objects, kernels, pairings and graded dimensions.

Exact values are written as strings "p/q" (or integer strings); floats are
refused so that rounding can never enter the exact layer.

    set     {"dim": 2, "cells": [[{"coeffs": ["1", "0"], "rel": "le", "rhs": "1"}, ...], ...]}
    object  {"dim": 2, "terms": [{"set": <set>, "shift": 0, "rank": 1}, ...]}  (a bare term list is accepted)
    kernel  {"n1": 1, "n2": 1, "object": <object>}
    pairing [["1", "0"], ["0", "1"]]
    dims    {"dims": {"0": 1}}
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from ..cohomology.graded import GradedDims
from ..exactgeom.sets import EQ, LE, LT, AffineConstraint, Cell, PLSet
from ..sheafobj.objects import ConstructibleObject, SemilinearKernel, ShiftedTerm

RELS = (EQ, LE, LT)


class FormatError(ValueError):
    """A malformed document; `where` names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise FormatError(where, f"expected a rational string like \"3/4\", got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise FormatError(where, f"expected a rational string, got {type(value).__name__}")
    text = value.strip()
    if not text or any(c in text for c in ".eE"):
        raise FormatError(where, f"not an exact rational: {value!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(where, f"not a rational: {value!r}") from exc


def fmt_rational(x) -> str:
    return str(Fraction(x))


def _integer(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(where, f"expected an integer, got {value!r}")
    return value


def _field(doc: Any, key: str, where: str):
    if not isinstance(doc, dict):
        raise FormatError(where, "expected an object")
    if key not in doc:
        raise FormatError(where, f"missing field {key!r}")
    return doc[key]


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise FormatError(where, "expected a list")
    return value


# sets


def constraint_to_doc(c: AffineConstraint) -> dict:
    return {"coeffs": [fmt_rational(a) for a in c.coeffs], "rel": c.rel, "rhs": fmt_rational(c.rhs)}


def constraint_from_doc(doc: Any, dim: int, where: str) -> AffineConstraint:
    coeffs = _list(_field(doc, "coeffs", where), f"{where}.coeffs")
    if len(coeffs) != dim:
        raise FormatError(f"{where}.coeffs", f"expected {dim} coefficients, got {len(coeffs)}")
    rel = _field(doc, "rel", where)
    if rel not in RELS:
        raise FormatError(f"{where}.rel", f"must be one of {RELS}, got {rel!r}")
    rhs = rational(_field(doc, "rhs", where), f"{where}.rhs")
    return AffineConstraint([rational(a, f"{where}.coeffs[{i}]") for i, a in enumerate(coeffs)], rhs, rel)


def set_to_doc(s: PLSet) -> dict:
    return {"dim": s.dim, "cells": [[constraint_to_doc(c) for c in cell.constraints] for cell in s.cells]}


def set_from_doc(doc: Any, where: str = "set") -> PLSet:
    dim = _integer(_field(doc, "dim", where), f"{where}.dim")
    if dim < 0:
        raise FormatError(f"{where}.dim", "must be nonnegative")
    cells = []
    for i, cdoc in enumerate(_list(_field(doc, "cells", where), f"{where}.cells")):
        cw = f"{where}.cells[{i}]"
        cs = [constraint_from_doc(c, dim, f"{cw}[{j}]") for j, c in enumerate(_list(cdoc, cw))]
        cell = Cell.make(dim, cs)
        if cell is not None:
            cells.append(cell)
    return PLSet(dim, cells)


# objects


def object_to_doc(f: ConstructibleObject) -> dict:
    return {"dim": f.dim, "terms": [{"set": set_to_doc(t.set), "shift": t.shift, "rank": t.rank} for t in f.terms]}


def object_from_doc(doc: Any, where: str = "object") -> ConstructibleObject:
    if isinstance(doc, list):
        terms_doc, dim = doc, None
    else:
        terms_doc = _list(_field(doc, "terms", where), f"{where}.terms")
        dim = _integer(_field(doc, "dim", where), f"{where}.dim")
        where = f"{where}.terms"
    terms = []
    for i, tdoc in enumerate(terms_doc):
        tw = f"{where}[{i}]"
        s = set_from_doc(_field(tdoc, "set", tw), f"{tw}.set")
        if dim is None:
            dim = s.dim
        if s.dim != dim:
            raise FormatError(f"{tw}.set.dim", f"expected {dim}, got {s.dim}")
        shift = _integer(tdoc.get("shift", 0), f"{tw}.shift")
        rank = _integer(tdoc.get("rank", 1), f"{tw}.rank")
        if rank < 1:
            raise FormatError(f"{tw}.rank", "must be positive")
        if not s.is_empty():
            terms.append(ShiftedTerm(s, shift, rank))
    if dim is None:
        raise FormatError(where, "an empty term list needs the {\"dim\", \"terms\"} form")
    return ConstructibleObject(dim, terms)


def kernel_from_doc(doc: Any, where: str = "kernel") -> SemilinearKernel:
    n1 = _integer(_field(doc, "n1", where), f"{where}.n1")
    n2 = _integer(_field(doc, "n2", where), f"{where}.n2")
    obj = object_from_doc(_field(doc, "object", where), f"{where}.object")
    if obj.dim != n1 + n2:
        raise FormatError(f"{where}.object.dim", f"expected n1 + n2 = {n1 + n2}, got {obj.dim}")
    return SemilinearKernel(obj, n1, n2)


def kernel_to_doc(k: SemilinearKernel) -> dict:
    return {"n1": k.n1, "n2": k.n2, "object": object_to_doc(k.obj)}


def pairing_from_doc(doc: Any, where: str = "pairing") -> list[list[Fraction]]:
    rows = _list(doc, where)
    n = len(rows)
    out = []
    for i, r in enumerate(rows):
        r = _list(r, f"{where}[{i}]")
        if len(r) != n:
            raise FormatError(f"{where}[{i}]", f"pairing must be square ({n}x{n})")
        out.append([rational(v, f"{where}[{i}][{j}]") for j, v in enumerate(r)])
    return out


def pairing_to_doc(b) -> list[list[str]]:
    return [[fmt_rational(v) for v in row] for row in b]


def dims_to_doc(g: GradedDims) -> dict:
    return {"dims": g.to_dict()}


def dims_from_doc(doc: Any, where: str = "dims") -> GradedDims:
    d = _field(doc, "dims", where)
    if not isinstance(d, dict):
        raise FormatError(f"{where}.dims", "expected an object")
    try:
        return GradedDims({int(k): _integer(v, f"{where}.dims[{k}]") for k, v in d.items()})
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"{where}.dims", str(exc)) from exc


def parse_point(text: str, where: str = "--point") -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",")]
    if not text.strip() or any(not p.strip() for p in parts):
        raise FormatError(where, f"expected comma-separated rationals, got {text!r}")
    return tuple(rational(p, f"{where}[{i}]") for i, p in enumerate(parts))


# files


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    except OSError as exc:
        raise FormatError(path, exc.strerror or str(exc)) from exc


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
