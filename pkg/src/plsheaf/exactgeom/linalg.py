"""Exact rational linear algebra on plain lists of Fractions."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple  # tuple of Fraction


def frac(value) -> Fraction:
    """Parse an int, Fraction or "p/q" string into a Fraction (floats rejected)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def vec(values) -> tuple:
    return tuple(frac(v) for v in values)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def primitive(coeffs: Sequence[Fraction], rhs: Fraction = Fraction(0)):
    """Scale (coeffs, rhs) to coprime integers; the overall sign is preserved."""
    den = 1
    for c in (*coeffs, rhs):
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in (*coeffs, rhs)]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints[:-1]), ints[-1]
    return tuple(v // g for v in ints[:-1]), ints[-1] // g


def rref(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [v / p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Basis of {v : rows @ v = 0}.

    Basis vector k has a 1 in the k-th free column and 0 in the other free
    columns, so coordinates of a kernel vector in this basis are simply its
    free-column entries.
    """
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis, free


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], ncols: int):
    """One solution of rows @ x = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in matrix]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            result = -result
        p = m[c][c]
        result *= p
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def in_rowspace(red_rows, pivots, v) -> bool:
    """Whether v lies in the span of an RREF system (red_rows, pivots)."""
    w = list(v)
    for row, pc in zip(red_rows, pivots):
        if w[pc] != 0:
            f = w[pc]
            w = [a - f * b for a, b in zip(w, row)]
    return all(x == 0 for x in w)


def integer_rank(columns_or_rows) -> int:
    """Rank over Q of a sparse integer matrix given as a list of {index: int} rows.

    Fraction-free elimination: rows are combined with integer multipliers and
    divided by their content, so entries stay small on incidence matrices.
    """
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for row in columns_or_rows:
        cur = {k: v for k, v in row.items() if v}
        while cur:
            col = min(cur)
            piv = pivots.get(col)
            if piv is None:
                g = 0
                for v in cur.values():
                    g = gcd(g, v)
                if g > 1:
                    cur = {k: v // g for k, v in cur.items()}
                pivots[col] = cur
                r += 1
                break
            a, b = piv[col], cur[col]
            nxt = {}
            for k in set(cur) | set(piv):
                v = cur.get(k, 0) * a - piv.get(k, 0) * b
                if v:
                    nxt[k] = v
            g = 0
            for v in nxt.values():
                g = gcd(g, v)
            if g > 1:
                nxt = {k: v // g for k, v in nxt.items()}
            cur = nxt
    return r
