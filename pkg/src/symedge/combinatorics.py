"""Exact counting data for the symmetric edge polytope of the d-cycle.

Everything here works over Python ints and :class:`fractions.Fraction`;
no floating point is used.  The polytope is ``Conv(A_d)`` where ``A_d`` has
columns ``z = (0, ..., 0, 1)``, ``x_i = (e_i - e_{i+1}, 1)`` and
``y_i = (e_{i+1} - e_i, 1)`` with indices taken cyclically.

Three closed-form characterisations of the h-vector are provided together
with a fourth extraction from the Ehrhart polynomial itself; they are meant
to be cross-checked against one another.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from symedge.errors import DomainError


def _check_d(d: int) -> None:
    if not isinstance(d, int) or d < 3:
        raise DomainError(f"cycle length must be an integer >= 3, got {d!r}")


def half_up(d: int) -> int:
    """Return ``ceil(d / 2)``."""
    return (d + 1) // 2


@dataclass(frozen=True)
class CycleConfiguration:
    """The configuration matrix ``A_d`` with its column/variable bookkeeping.

    Columns are stored in variable order ``z, x_1..x_d, y_1..y_d`` so that
    column ``j`` is the exponent of variable ``j`` in a toric monomial.
    """

    d: int

    def __post_init__(self):
        _check_d(self.d)

    @property
    def k(self) -> int:
        return half_up(self.d)

    @property
    def nvars(self) -> int:
        return 2 * self.d + 1

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return _columns(self.d)

    def var_name(self, j: int) -> str:
        d = self.d
        if j == 0:
            return "z"
        if 1 <= j <= d:
            return f"x{j}"
        if d < j <= 2 * d:
            return f"y{j - d}"
        raise IndexError(j)

    def x(self, i: int) -> int:
        """Variable index of ``x_i`` (1-based ``i``)."""
        return i

    def y(self, i: int) -> int:
        """Variable index of ``y_i`` (1-based ``i``)."""
        return self.d + i

    def rank(self) -> int:
        """Rank of ``A_d`` over the rationals, by exact elimination."""
        rows = [list(map(Fraction, row)) for row in zip(*self.columns)]
        return _rank(rows)


@lru_cache(maxsize=None)
def _columns(d: int) -> tuple[tuple[int, ...], ...]:
    cols = [tuple([0] * d + [1])]
    edges = []
    for i in range(d):
        v = [0] * d
        v[i] += 1
        v[(i + 1) % d] -= 1
        edges.append(v)
    cols.extend(tuple(v + [1]) for v in edges)
    cols.extend(tuple([-c for c in v] + [1]) for v in edges)
    return tuple(cols)


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def binom(n: int, r: int) -> int:
    """Binomial coefficient, extended to negative upper index.

    ``binom(n, r)`` is 0 for ``r < 0`` and for ``r > n >= 0``.  For ``n < 0``
    the falling-factorial value ``n (n-1) ... (n-r+1) / r!`` is returned.

    >>> binom(5, 2), binom(4, 7), binom(-2, 3)
    (10, 0, -4)
    """
    if r < 0:
        return 0
    if n >= 0:
        return comb(n, r) if r <= n else 0
    # C(n, r) = (-1)^r C(r - n - 1, r)
    return (-1) ** r * comb(r - n - 1, r)


def r_count(d: int, i: int) -> int:
    """Number of squarefree standard monomials of degree ``i`` in the x/y variables."""
    _check_d(d)
    if not 0 <= i <= d:
        raise DomainError(f"index i must satisfy 0 <= i <= d, got i={i}, d={d}")
    k = half_up(d)
    return comb(d, i) * sum(binom(i, k - l) for l in range(1, d - i + 1))


def s_count(d: int, j: int) -> int:
    """Squarefree standard monomials of degree ``j`` divisible by ``z``."""
    _check_d(d)
    if not 1 <= j <= d:
        raise DomainError(f"index j must satisfy 1 <= j <= d, got j={j}, d={d}")
    return r_count(d, j - 1)


@dataclass(frozen=True)
class BinomialBasisPolynomial:
    """``L(m) = sum_i coeffs[i] * C(m, i)``."""

    d: int
    coeffs: tuple[int, ...]

    def __call__(self, m: int) -> int:
        return sum(c * binom(m, i) for i, c in enumerate(self.coeffs))

    def to_monomial(self) -> DensePolynomial:
        n = len(self.coeffs)
        s = stirling1_table(n - 1)
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            f = Fraction(c, factorial(i))
            for j in range(i + 1):
                if s[i][j]:
                    out[j] += f * s[i][j]
        return DensePolynomial(tuple(out)).trimmed()


@dataclass(frozen=True)
class DensePolynomial:
    """Univariate polynomial with exact rational coefficients, ascending order."""

    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.trimmed().coeffs) - 1

    def trimmed(self) -> DensePolynomial:
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        return DensePolynomial(tuple(Fraction(x) for x in c))

    def __call__(self, m):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * m + c
        return acc

    def compose_shift(self, a) -> DensePolynomial:
        """Coefficients of ``p(m + a)``."""
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            apow = Fraction(1)
            # c * (m + a)^j = sum_i c C(j, i) a^(j-i) m^i, i descending from j
            for i in range(j, -1, -1):
                out[i] += c * comb(j, i) * apow
                apow *= a
        return DensePolynomial(tuple(out))

    def reflect(self) -> DensePolynomial:
        """Coefficients of ``p(-m)``."""
        return DensePolynomial(tuple(c if j % 2 == 0 else -c for j, c in enumerate(self.coeffs)))


@dataclass(frozen=True)
class HVector:
    d: int
    entries: tuple[int, ...]

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, j):
        return self.entries[j]

    def is_palindromic(self) -> bool:
        return self.entries == self.entries[::-1]


@lru_cache(maxsize=8)
def stirling1_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Signed Stirling numbers of the first kind ``s(i, j)`` for ``0 <= j <= i <= n``."""
    rows = [[1]]
    for i in range(n):
        prev = rows[-1]
        row = [0] * (i + 2)
        for j in range(i + 2):
            left = prev[j - 1] if j >= 1 else 0
            down = prev[j] if j <= i else 0
            row[j] = left - i * down
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def ehrhart_binomial_basis(d: int) -> BinomialBasisPolynomial:
    _check_d(d)
    return BinomialBasisPolynomial(d, tuple(r_count(d, i) for i in range(d)))


def ehrhart_eval(d: int, m: int) -> int:
    """Number of lattice points in the ``m``-th dilate (any integer ``m``)."""
    return ehrhart_binomial_basis(d)(m)


def ehrhart_monomial_basis(d: int) -> DensePolynomial:
    return ehrhart_binomial_basis(d).to_monomial()


def normalized_volume(d: int) -> int:
    _check_d(d)
    k = half_up(d)
    return k * comb(d, k)


def _mirror(d: int, head: list[int]) -> HVector:
    full = [0] * d
    for j, h in enumerate(head):
        full[j] = h
        full[d - 1 - j] = h
    return HVector(d, tuple(full))


def h_vector_closed(d: int) -> HVector:
    """h-vector from the alternating closed-form sum."""
    _check_d(d)
    k = half_up(d)
    head = []
    for j in range(k):
        t = sum((-2) ** i * comb(d, i) * binom(d - i - 1, j - i) for i in range(j + 1))
        head.append((-1) ** j * t)
    return _mirror(d, head)


def h_vector_recurrence(d: int) -> HVector:
    """h-vector built up from ``d = 3`` by the Pascal-type recurrence.

    The recurrence ``h_j(d) = h_j(d-1) + h_{j-1}(d-1)`` is used for every
    ``1 <= j <= k - 1`` except odd ``d`` with ``j = k - 1``, whose value is
    ``2^(d-1)``.
    """
    _check_d(d)
    h = h_vector_closed(3)
    for n in range(4, d + 1):
        k = half_up(n)
        head = [1]
        for j in range(1, k):
            if n % 2 == 1 and j == k - 1:
                head.append(2 ** (n - 1))
            else:
                head.append(h[j] + h[j - 1])
        h = _mirror(n, head)
    return h


def _series_mul(a: list[Fraction], b: list[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, ai in enumerate(a[:n]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: n - i]):
            out[i + j] += ai * bj
    return out


def h_vector_genfunc(d: int) -> HVector:
    """h_j as the ``u^j`` coefficient of ``2^d (1+u)^d (2+u)^(j-d)``.

    The negative power is expanded as the truncated series
    ``2^(j-d) * sum_n C(j-d, n) (u/2)^n``.
    """
    _check_d(d)
    k = half_up(d)
    head = []
    for j in range(k):
        n = j + 1
        one_plus_u = [Fraction(comb(d, i)) for i in range(n)]
        e = j - d
        two_plus_u = [Fraction(2) ** e * binom(e, i) / Fraction(2) ** i for i in range(n)]
        coeff = 2**d * _series_mul(one_plus_u, two_plus_u, n)[j]
        if coeff.denominator != 1:
            raise ArithmeticError(f"non-integral series coefficient {coeff} at d={d}, j={j}")
        head.append(int(coeff))
    return _mirror(d, head)


def h_vector_from_ehrhart(d: int) -> HVector:
    """Numerator of the Ehrhart series, read off from lattice-point counts.

    Unlike the other three constructions every entry is computed directly,
    so palindromicity is a genuine check here rather than a construction.
    """
    _check_d(d)
    L = ehrhart_binomial_basis(d)
    vals = [L(m) for m in range(d)]
    return HVector(d, tuple(
        sum((-1) ** i * comb(d, i) * vals[j - i] for i in range(j + 1)) for j in range(d)
    ))


H_VECTOR_METHODS = {
    "closed": h_vector_closed,
    "recurrence": h_vector_recurrence,
    "genfunc": h_vector_genfunc,
    "ehrhart": h_vector_from_ehrhart,
}


def reciprocity_check(d: int) -> bool:
    """Exact check of ``L(-m) = (-1)^(d-1) L(m-1)`` as polynomials."""
    p = ehrhart_monomial_basis(d)
    lhs = p.reflect().coeffs
    sign = -1 if (d - 1) % 2 else 1
    rhs = tuple(sign * c for c in p.compose_shift(-1).coeffs)
    return lhs == rhs
