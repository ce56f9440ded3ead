"""Exact linear programming over the rationals.

The core is a dense simplex on an integer tableau (Edmonds/Bareiss integer
pivoting: every update is an exact integer division by the previous pivot),
with Bland's rule so degenerate problems terminate.  Free variables are split
as y = u - v.  Callers supply a feasible starting point; the start is shifted
to the origin so the all-slack basis is feasible and no phase-1 bookkeeping
leaks into the solver itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .linalg import dot, nullspace, solve


@dataclass
class LPResult:
    status: str  # "optimal" | "unbounded"
    point: tuple  # optimal point, or a feasible point on the unbounded ray
    value: Optional[Fraction] = None
    ray: Optional[tuple] = None


def _lcm_den(values) -> int:
    den = 1
    for v in values:
        d = v.denominator
        den = den * d // gcd(den, d)
    return den


def _simplex(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], c: Sequence[Fraction]) -> LPResult:
    """max c.y subject to A y <= b with b >= 0 and y free."""
    m = len(A)
    n = len(c)
    nv = 2 * n + m
    rows = []
    for i in range(m):
        scale = _lcm_den((*A[i], b[i]))
        row = [0] * (nv + 1)
        for j in range(n):
            a = int(A[i][j] * scale)
            row[j] = a
            row[n + j] = -a
        row[2 * n + i] = 1
        row[nv] = int(b[i] * scale)
        rows.append(row)
    cscale = _lcm_den(c)
    obj = [0] * (nv + 1)
    for j in range(n):
        v = int(c[j] * cscale)
        obj[j] = -v
        obj[n + j] = v
    rows.append(obj)
    basis = [2 * n + i for i in range(m)]
    D = 1

    while True:
        objrow = rows[m]
        q = next((j for j in range(nv) if objrow[j] < 0), None)
        if q is None:
            break
        r = -1
        for i in range(m):
            a = rows[i][q]
            if a > 0:
                if r < 0:
                    r = i
                    continue
                # compare rows[i][-1]/a with rows[r][-1]/rows[r][q]
                lhs = rows[i][nv] * rows[r][q]
                rhs = rows[r][nv] * a
                if lhs < rhs or (lhs == rhs and basis[i] < basis[r]):
                    r = i
        if r < 0:
            point = _extract(rows, basis, D, n, m)
            direction = [Fraction(0)] * nv
            direction[q] = Fraction(1)
            for i in range(m):
                direction[basis[i]] = Fraction(-rows[i][q], D)
            ray = tuple(direction[j] - direction[n + j] for j in range(n))
            return LPResult("unbounded", point, None, ray)
        prow = rows[r]
        p = prow[q]
        for i in range(m + 1):
            if i == r:
                continue
            row = rows[i]
            f = row[q]
            if f == 0:
                rows[i] = [(x * p) // D for x in row] if p != D else row
                continue
            rows[i] = [(x * p - f * y) // D for x, y in zip(row, prow)]
        basis[r] = q
        D = p

    point = _extract(rows, basis, D, n, m)
    return LPResult("optimal", point, dot(c, point))


def _extract(rows, basis, D, n, m):
    vals = {}
    for i in range(m):
        vals[basis[i]] = Fraction(rows[i][-1], D)
    return tuple(vals.get(j, Fraction(0)) - vals.get(n + j, Fraction(0)) for j in range(n))


def maximize_from(A, b, c, start) -> LPResult:
    """max c.x subject to A x <= b, given a feasible start point."""
    n = len(c)
    if n == 0:
        return LPResult("optimal", (), Fraction(0))
    shifted = [bi - dot(ai, start) for ai, bi in zip(A, b)]
    if any(v < 0 for v in shifted):
        raise ValueError("start point is infeasible")
    res = _simplex(A, shifted, c)
    point = tuple(s + p for s, p in zip(start, res.point))
    value = dot(c, point) if res.status == "optimal" else None
    return LPResult(res.status, point, value, res.ray)


def affine_hull(eqs, dim):
    """Parametrize {x : a.x = b for (a, b) in eqs} as x0 + N u; None if empty."""
    if not eqs:
        basis = [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
        return tuple(Fraction(0) for _ in range(dim)), basis
    x0 = solve([a for a, _ in eqs], [b for _, b in eqs], dim)
    if x0 is None:
        return None
    basis, _ = nullspace([a for a, _ in eqs], dim)
    return x0, basis


def find_point(eqs, les, lts, dim) -> Optional[tuple]:
    """A rational point with a.x = b (eqs), a.x <= b (les), a.x < b (lts), or None.

    Strict rows are handled by maximizing a common slack eps (capped at 1):
    the strict system is feasible iff that maximum is positive.
    """
    hull = affine_hull(eqs, dim)
    if hull is None:
        return None
    x0, N = hull
    k = len(N)

    def reduce(rows):
        out = []
        for a, bb in rows:
            coeffs = tuple(dot(a, col) for col in N)
            rhs = bb - dot(a, x0)
            out.append((coeffs, rhs))
        return out

    le_rows = reduce(les)
    lt_rows = reduce(lts)
    # constant rows decide themselves
    live_le, live_lt = [], []
    for coeffs, rhs in le_rows:
        if any(coeffs):
            live_le.append((coeffs, rhs))
        elif rhs < 0:
            return None
    for coeffs, rhs in lt_rows:
        if any(coeffs):
            live_lt.append((coeffs, rhs))
        elif rhs <= 0:
            return None

    def lift(u):
        return tuple(x0[i] + sum((u[j] * N[j][i] for j in range(k)), Fraction(0)) for i in range(dim))

    if all(r >= 0 for _, r in live_le) and all(r > 0 for _, r in live_lt):
        return tuple(x0)

    # phase 1: variables (u, eps, z); minimize the artificial z
    has_strict = bool(live_lt)
    nv = k + (1 if has_strict else 0) + 1
    zi = nv - 1
    A, b = [], []
    for coeffs, rhs in live_le:
        row = list(coeffs) + ([Fraction(0)] if has_strict else []) + [Fraction(-1)]
        A.append(row)
        b.append(rhs)
    for coeffs, rhs in live_lt:
        row = list(coeffs) + [Fraction(1), Fraction(-1)]
        A.append(row)
        b.append(rhs)
    if has_strict:
        e = [Fraction(0)] * nv
        e[k] = Fraction(1)
        A.append(e)
        b.append(Fraction(1))
        e = [Fraction(0)] * nv
        e[k] = Fraction(-1)
        A.append(e)
        b.append(Fraction(0))
    e = [Fraction(0)] * nv
    e[zi] = Fraction(-1)
    A.append(e)
    b.append(Fraction(0))
    z0 = max([Fraction(0)] + [-r for r in b[: len(live_le) + len(live_lt)]])
    start = [Fraction(0)] * nv
    start[zi] = z0
    c = [Fraction(0)] * nv
    c[zi] = Fraction(-1)
    res = maximize_from(A, b, c, start)
    if res.point[zi] > 0:
        return None
    if not has_strict:
        return lift(res.point[:k])

    # phase 2: fix z = 0 and push eps up
    A2 = [row[:zi] for row in A[:-1]]
    b2 = b[:-1]
    start2 = list(res.point[:zi])
    c2 = [Fraction(0)] * zi
    c2[k] = Fraction(1)
    res2 = maximize_from(A2, b2, c2, start2)
    if res2.point[k] <= 0:
        return None
    return lift(res2.point[:k])
