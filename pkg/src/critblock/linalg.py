"""Exact linear algebra over Q.

Elimination runs on integer rows (denominators cleared, rows divided by
their content after every update) with a fixed pivot order: columns left to
right, first eligible row in input order.  Results are returned as Fraction
rows in reduced row echelon form, so spans compare by equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Row = list[Fraction]


def _to_int_row(row: Sequence) -> list[int]:
    den = 1
    for v in row:
        if not isinstance(v, int):
            den = lcm(den, Fraction(v).denominator)
    return [int(Fraction(v) * den) for v in row]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    work = [_primitive(_to_int_row(r)) for r in rows if any(r)]
    for r in work:
        if len(r) != ncols:
            raise ValueError("row length does not match ncols")
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top >= len(work):
            break
        pr = next((i for i in range(top, len(work)) if work[i][col]), None)
        if pr is None:
            continue
        work[top], work[pr] = work[pr], work[top]
        prow = work[top]
        p = prow[col]
        for i in range(len(work)):
            if i != top and work[i][col]:
                f = work[i][col]
                g = gcd(p, f)
                a, b = p // g, f // g
                work[i] = _primitive([a * x - b * y for x, y in zip(work[i], prow)])
        pivots.append(col)
        top += 1
    out = []
    for r, col in zip(work[:top], pivots):
        p = r[col]
        out.append([Fraction(v, p) for v in r])
    return out, pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Row]:
    """Kernel basis ``{v : M v = 0}`` as RREF rows."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, pc in zip(red, pivots):
            if r[free]:
                v[pc] = -r[free]
        basis.append(v)
    return rref(basis, ncols)[0]


def same_span(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int) -> bool:
    return rref(a, ncols)[0] == rref(b, ncols)[0]


def contains(big: Sequence[Sequence], vectors: Sequence[Sequence], ncols: int) -> bool:
    """Whether every vector lies in the row span of ``big``."""
    return rank(list(big) + list(vectors), ncols) == rank(big, ncols)


def intersect(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int) -> list[Row]:
    """Row-span intersection, computed from the kernel of ``[A; -B]^T``."""
    a = rref(a, ncols)[0]
    b = rref(b, ncols)[0]
    if not a or not b:
        return []
    k = len(a) + len(b)
    # columns are the basis vectors; find (s, t) with s.A = t.B
    system = [[a[i][c] for i in range(len(a))] + [-b[j][c] for j in range(len(b))] for c in range(ncols)]
    ker = nullspace(system, k)
    out = []
    for coeffs in ker:
        v = [Fraction(0)] * ncols
        for i, s in enumerate(coeffs[: len(a)]):
            if s:
                for c in range(ncols):
                    v[c] += s * a[i][c]
        out.append(v)
    return rref(out, ncols)[0]


def inverse(m: Sequence[Sequence[Fraction]]) -> list[Row]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]
