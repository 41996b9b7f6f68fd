"""Two-phase tableau simplex over the rationals with Bland's pivoting rule.

Solves ``min c.x  s.t.  A x = b, x >= 0`` exactly.  Small problems only;
the tableau is dense and every entry is a :class:`~fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"


@dataclass
class LPResult:
    status: str
    x: Optional[list[Fraction]] = None
    value: Optional[Fraction] = None


def _pivot(T: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    pr = T[row]
    pv = pr[col]
    if pv != 1:
        T[row] = pr = [a / pv for a in pr]
    for r, other in enumerate(T):
        if r != row and other[col] != 0:
            f = other[col]
            T[r] = [a - f * b for a, b in zip(other, pr)]
    basis[row] = col


def _run(T, basis, ncols, allowed) -> str:
    """Minimise the objective held in the last tableau row.

    The last row stores reduced costs in columns ``0..ncols-1`` and the
    negated objective value in the final column.
    """
    m = len(T) - 1
    while True:
        obj = T[-1]
        enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        for r in range(m):
            a = T[r][enter]
            if a > 0:
                ratio = T[r][-1] / a
                key = (ratio, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], enter)


def solve(A: Sequence[Sequence], b: Sequence, c: Optional[Sequence] = None) -> LPResult:
    """Exact LP solve.  ``c=None`` asks only for feasibility."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    rhs = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        rows.append(row)
        rhs.append(bi)

    # phase 1: artificials in columns n..n+m-1
    ncols = n + m
    T = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(rows[i] + art + [rhs[i]])
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(n):
            obj[j] -= rows[i][j]
        obj[-1] -= rhs[i]
    T.append(obj)
    basis = list(range(n, n + m))
    _run(T, basis, ncols, [True] * ncols)
    if T[-1][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive zero-level artificials out; drop rows that turn out to be redundant
    r = 0
    while r < len(T) - 1:
        if basis[r] >= n:
            col = next((j for j in range(n) if T[r][j] != 0), None)
            if col is None:
                del T[r]
                del basis[r]
                continue
            _pivot(T, basis, r, col)
        r += 1

    cost = [Fraction(0)] * n if c is None else [Fraction(v) for v in c]
    obj = cost + [Fraction(0)] * m + [Fraction(0)]
    for r, bv in enumerate(basis):
        if obj[bv] != 0:
            f = obj[bv]
            obj = [a - f * t for a, t in zip(obj, T[r])]
    T[-1] = obj
    allowed = [True] * n + [False] * m
    status = _run(T, basis, ncols, allowed)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for r, bv in enumerate(basis):
        if bv < n:
            x[bv] = T[r][-1]
    value = sum((ci * xi for ci, xi in zip(cost, x)), Fraction(0))
    return LPResult(OPTIMAL, x, value)
