"""Brute-force lattice-point counts for dilates of ``Conv(A_d)``.

Points are stored in the first ``d`` coordinates only; the homogenising row
of ``A_d`` becomes the dilation factor ``m``.  Two oracles are offered:

* :func:`dilate_points` forms the ``m``-fold Minkowski sum of the generators,
  which is the full point set of ``m P`` because the polytope has the integer
  decomposition property;
* :func:`contains` decides membership by exact linear feasibility and needs
  no such assumption.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from symedge import simplex
from symedge.combinatorics import _check_d
from symedge.errors import ResourceLimitError

MAX_D = 6
MAX_M = 6

Point = tuple[int, ...]


def _guard(d: int, m: int, max_d: int, max_m: int) -> None:
    if d > max_d or m > max_m:
        raise ResourceLimitError(f"lattice enumeration limited to d <= {max_d}, m <= {max_m}")


def generators(d: int) -> list[Point]:
    """Origin, ``e_i - e_{i+1}`` and their negatives (cyclic indices)."""
    _check_d(d)
    pts = [tuple([0] * d)]
    edges = []
    for i in range(d):
        v = [0] * d
        v[i] = 1
        v[(i + 1) % d] = -1
        edges.append(tuple(v))
    pts.extend(edges)
    pts.extend(tuple(-c for c in v) for v in edges)
    return pts


def dilate_points(d: int, m: int, *, max_d: int = MAX_D, max_m: int = MAX_M) -> frozenset[Point]:
    _check_d(d)
    if m < 0:
        return frozenset()
    _guard(d, m, max_d, max_m)
    gens = generators(d)
    layer = {tuple([0] * d)}
    for _ in range(m):
        layer = {tuple(a + b for a, b in zip(p, g)) for p in layer for g in gens}
    return frozenset(layer)


def _system(p: Point, d: int, m: int):
    gens = generators(d)
    A = [[g[r] for g in gens] for r in range(d)]
    A.append([1] * len(gens))
    b = list(p) + [m]
    return A, b


def contains(p: Point, d: int, m: int, *, max_d: int = MAX_D) -> bool:
    """Exact test of ``p in m * Conv(A_d)`` via phase-1 feasibility."""
    _check_d(d)
    if d > max_d:
        raise ResourceLimitError(f"membership test limited to d <= {max_d}")
    if len(p) != d:
        raise ValueError(f"point has {len(p)} coordinates, expected {d}")
    if m < 0 or sum(p) != 0:
        return False
    A, b = _system(p, d, m)
    return simplex.solve(A, b).status == simplex.OPTIMAL


def interior_slack(p: Point, d: int, m: int) -> Fraction | None:
    """Largest weight the origin can carry in ``p = sum lambda_j a_j``, ``sum lambda_j = m``.

    Positive slack means ``p`` lies in the relative interior of ``m P``;
    zero means it is on the boundary; ``None`` means it is outside.
    """
    if m < 0 or sum(p) != 0:
        return None
    A, b = _system(p, d, m)
    n = len(A[0])
    c = [Fraction(0)] * n
    c[0] = Fraction(-1)  # maximise the origin coefficient
    res = simplex.solve(A, b, c)
    if res.status != simplex.OPTIMAL:
        return None
    return -res.value


def box_points(d: int, m: int):
    """Sum-zero integer points with every coordinate in ``[-m, m]``."""
    for head in itertools.product(range(-m, m + 1), repeat=d - 1):
        last = -sum(head)
        if -m <= last <= m:
            yield head + (last,)


def count_points(d: int, m: int, *, cross_check: bool = False,
                 max_d: int = MAX_D, max_m: int = MAX_M) -> int:
    """Number of lattice points in the ``m``-th dilate.

    With ``cross_check`` every point of the bounding box is also run through
    :func:`contains`, and a disagreement with the Minkowski enumeration raises
    ``AssertionError``.
    """
    pts = dilate_points(d, m, max_d=max_d, max_m=max_m)
    if cross_check:
        for q in box_points(d, m):
            member = contains(q, d, m, max_d=max_d)
            if member != (q in pts):
                raise AssertionError(f"oracles disagree at point {q}, d={d}, m={m}")
    return len(pts)


def interior_count(d: int, m: int) -> int:
    """Lattice points in the relative interior of the ``m``-th dilate."""
    _check_d(d)
    _guard(d, m, MAX_D, MAX_M)
    total = 0
    for q in box_points(d, max(m, 0)):
        s = interior_slack(q, d, m)
        if s is not None and s > 0:
            total += 1
    return total
