"""Certified complex roots of integer polynomials by Aberth-Ehrlich iteration.

The iteration runs in :mod:`mpmath` floating point at a working precision
that doubles whenever certification fails.  Certification never relies on
floating point: each approximation ``z`` is a dyadic rational, so ``p(z)``
and ``p'(z)`` are evaluated exactly in Gaussian-integer arithmetic and the
disk ``|w - z| <= n |p(z) / p'(z)|`` (which always contains a root) is
bounded from above by an integer square root.  When the ``n`` disks are
pairwise disjoint each holds exactly one root.

The ceiling on working precision may be set through the environment
variable ``SYMEDGE_MAX_BITS`` (default 1048576).
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence

import mpmath
from mpmath import mp, mpc, mpf

from symedge.combinatorics import DensePolynomial, ehrhart_monomial_basis
from symedge.errors import DomainError, EscalationError

START_BITS = 128
DEFAULT_DIGITS = 10
DEFAULT_MAX_BITS = 1_048_576
MAX_BITS_ENV = "SYMEDGE_MAX_BITS"

# fixed angular offset for the initial circles; avoids symmetric starts
_ANGLE_OFFSET = 0.7


def max_bits_default() -> int:
    raw = os.environ.get(MAX_BITS_ENV)
    return int(raw) if raw else DEFAULT_MAX_BITS


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, ascending coefficients, obtained by clearing denominators."""

    coeffs: tuple[int, ...]
    scale: int = 1

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(tuple(j * c for j, c in enumerate(self.coeffs))[1:] or (0,))


def to_int_poly(p: DensePolynomial | Sequence) -> IntPolynomial:
    """Multiply by the lcm of the denominators; the root set is unchanged."""
    coeffs = [Fraction(c) for c in (p.coeffs if isinstance(p, DensePolynomial) else p)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise DomainError("the zero polynomial has no finite root set")
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    out = [int(c * scale) for c in coeffs]
    if out[-1] < 0:
        out = [-c for c in out]
        scale = -scale
    return IntPolynomial(tuple(out), scale)


def ehrhart_int_poly(d: int) -> IntPolynomial:
    return to_int_poly(ehrhart_monomial_basis(d))


@dataclass(frozen=True)
class CertifiedRoot:
    """Approximation ``re + i im`` whose disk of radius ``radius`` holds a true root."""

    re: mpf
    im: mpf
    radius: mpf

    @property
    def value(self) -> mpc:
        return mpc(self.re, self.im)


@dataclass
class RootSolution:
    roots: list[CertifiedRoot]
    bits: int
    sweeps: int
    squarefree: bool
    digits: int
    history: list[tuple[int, str]] = field(default_factory=list)


# ---------------------------------------------------------------- exact helpers

def _man_exp(x: mpf) -> tuple[int, int]:
    """Signed mantissa and exponent with ``x = man * 2**exp`` exactly."""
    sign, man, exp, _ = x._mpf_
    if not man and exp:
        raise ValueError(f"not a finite number: {x}")
    man = int(man)
    return (-man if sign else man), int(exp)


def _to_fraction(x: mpf) -> Fraction:
    man, exp = _man_exp(x)
    return Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _ceil_sqrt(x: int) -> int:
    s = isqrt(x)
    return s if s * s == x else s + 1


def _dyadic_upper_sqrt(num: int, den: int, bits: int = 56) -> mpf:
    """An ``mpf`` at least ``sqrt(num / den)``, with about ``bits`` significant bits."""
    if num == 0:
        return mpf(0)
    mag = num.bit_length() - den.bit_length()
    K = bits - mag // 2
    if K >= 0:
        x = _ceil_div(num << (2 * K), den)
    else:
        x = _ceil_div(num, den << (-2 * K))
    R = _ceil_sqrt(x)
    return mpmath.ldexp(mpf(R), -K)


def inclusion_radius(coeffs: Sequence[int], z: mpc) -> mpf:
    """Upper bound on ``n |p(z) / p'(z)|`` evaluated exactly at the dyadic point ``z``."""
    n = len(coeffs) - 1
    (ma, ea), (mb, eb) = _man_exp(z.real), _man_exp(z.imag)
    e = max(0, -ea, -eb)
    a = ma << (ea + e)
    b = mb << (eb + e)
    # P(w) = 2^(e n) p(w / 2^e), w = a + b i; then p/p' = P / (2^e P')
    pr, pi = coeffs[n], 0
    dr, di = 0, 0
    for j in range(n - 1, -1, -1):
        dr, di = dr * a - di * b + pr, dr * b + di * a + pi
        pr, pi = pr * a - pi * b + (coeffs[j] << (e * (n - j))), pr * b + pi * a
    num = n * n * (pr * pr + pi * pi)
    den = (dr * dr + di * di) << (2 * e)
    if den == 0:
        return mpf("inf")
    return _dyadic_upper_sqrt(num, den)


def _disks_disjoint(zs: Sequence[mpc], radii: Sequence[mpf]) -> Optional[tuple[int, int]]:
    """Return an overlapping index pair, or ``None`` if all disks are disjoint."""
    pts = [(_to_fraction(z.real), _to_fraction(z.imag)) for z in zs]
    rs = [_to_fraction(r) for r in radii]
    for i in range(len(pts)):
        xi, yi = pts[i]
        for j in range(i + 1, len(pts)):
            dx, dy = xi - pts[j][0], yi - pts[j][1]
            if dx * dx + dy * dy <= (rs[i] + rs[j]) ** 2:
                return i, j
    return None


# ---------------------------------------------------------- squarefree handling

_PRIMES = (2305843009213693951, 4611686018427387847, 9223372036854775783, 1000000000000000003)


def _gcd_degree_mod(f: list[int], g: list[int], q: int) -> int:
    def norm(h):
        h = [c % q for c in h]
        while h and h[-1] == 0:
            h.pop()
        return h

    f, g = norm(f), norm(g)
    while g:
        inv = pow(g[-1], -1, q)
        while len(f) >= len(g):
            c = f[-1] * inv % q
            shift = len(f) - len(g)
            for i, gc in enumerate(g):
                f[i + shift] = (f[i + shift] - c * gc) % q
            f = norm(f)
            if not f:
                break
        f, g = g, f
    return len(f) - 1


def is_squarefree(p: IntPolynomial) -> bool:
    """Exact squarefreeness test.

    A constant gcd of ``p`` and ``p'`` modulo a prime not dividing the
    leading coefficients implies a constant gcd over the rationals.  If every
    trial prime is unlucky the rational gcd is computed directly.
    """
    c = list(p.coeffs)
    dc = list(p.derivative().coeffs)
    n = p.degree
    if n <= 1:
        return True
    for q in _PRIMES:
        if c[-1] % q == 0 or dc[-1] % q == 0:
            continue
        if _gcd_degree_mod(c, dc, q) == 0:
            return True
    return _rational_gcd(c, dc) == [Fraction(1)]


def _poly_divmod(f: list[Fraction], g: list[Fraction]):
    f = f[:]
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 1)
    while len(f) >= len(g) and any(f):
        c = f[-1] / g[-1]
        shift = len(f) - len(g)
        q[shift] = c
        for i, gc in enumerate(g):
            f[i + shift] -= c * gc
        f.pop()
        while f and f[-1] == 0:
            f.pop()
    return q, f


def _monic(f: list[Fraction]) -> list[Fraction]:
    return [c / f[-1] for c in f]


def _rational_gcd(f, g) -> list[Fraction]:
    f = _monic([Fraction(c) for c in f])
    g = _monic([Fraction(c) for c in g])
    while g:
        _, r = _poly_divmod(f, g)
        f, g = g, (_monic(r) if r else [])
    return f


def _deriv(f: list[Fraction]) -> list[Fraction]:
    return [j * c for j, c in enumerate(f)][1:]


def squarefree_factors(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun's squarefree decomposition over the rationals: ``[(factor, multiplicity)]``."""
    f = [Fraction(c) for c in p.coeffs]
    a = _rational_gcd(f, _deriv(f))
    b, _ = _poly_divmod(f, a)
    c, _ = _poly_divmod(_deriv(f), a)
    out = []
    i = 1
    while len(b) > 1:
        bd = _deriv(b)
        dd = [x - y for x, y in zip(c + [Fraction(0)] * (len(bd) - len(c)),
                                    bd + [Fraction(0)] * (len(c) - len(bd)))]
        while dd and dd[-1] == 0:
            dd.pop()
        a = _rational_gcd(b, dd) if dd else _monic(b)
        if len(a) > 1:
            out.append((to_int_poly(a), i))
        b, _ = _poly_divmod(b, a)
        c, _ = _poly_divmod(dd, a) if dd else ([Fraction(0)], [])
        i += 1
    return out


# ------------------------------------------------------------------ iteration

def initial_guesses(coeffs: Sequence[int]) -> list[complex]:
    """Points on circles whose radii come from the Newton polygon of ``log|c_j|``."""
    n = len(coeffs) - 1
    pts = [(j, math.log(abs(c))) for j, c in enumerate(coeffs) if c != 0]
    hull: list[tuple[int, float]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (pt[0] - x1) * (y2 - y1) >= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    guesses = []
    for (i, li), (j, lj) in zip(hull, hull[1:]):
        count = j - i
        radius = math.exp((li - lj) / count)
        for t in range(count):
            ang = 2 * math.pi * t / count + 2 * math.pi * i / n + _ANGLE_OFFSET
            guesses.append(radius * cmath.exp(1j * ang))
    return guesses


def _aberth(coeffs: Sequence[int], z: list[mpc], tol: mpf, max_sweeps: int) -> tuple[list[mpc], int]:
    """Gauss-Seidel Aberth sweeps at the current working precision."""
    n = len(coeffs) - 1
    a = [mpf(c) for c in coeffs]
    da = [mpf(j * c) for j, c in enumerate(coeffs)][1:]
    active = [True] * n
    sweeps = 0
    one = mpf(1)
    for sweeps in range(1, max_sweeps + 1):
        for i in range(n):
            if not active[i]:
                continue
            zi = z[i]
            p = a[n]
            for c in reversed(a[:n]):
                p = p * zi + c
            dp = da[n - 1]
            for c in reversed(da[: n - 1]):
                dp = dp * zi + c
            if p == 0:
                active[i] = False
                continue
            s = mpf(0)
            for j in range(n):
                if j != i:
                    s += one / (zi - z[j])
            ratio = p / dp if dp != 0 else None
            if ratio is None:
                w = one
            else:
                w = ratio / (one - ratio * s)
            z[i] = zi - w
            if abs(w) <= tol * max(one, abs(z[i])):
                active[i] = False
        if not any(active):
            break
    return z, sweeps


def _linear_root(coeffs) -> CertifiedRoot:
    # rounded value plus an exact error bound
    exact = Fraction(-coeffs[0], coeffs[1])
    r = mpf(exact.numerator) / exact.denominator
    err = abs(_to_fraction(r) - exact)
    rad = _dyadic_upper_sqrt(err.numerator ** 2, err.denominator ** 2) if err else mpf(0)
    return CertifiedRoot(r, mpf(0), rad)


def _solve_squarefree(coeffs: Sequence[int], digits: int, bits: int, max_bits: int,
                      history: list) -> tuple[list[CertifiedRoot], int, int]:
    n = len(coeffs) - 1
    if n == 1:
        with mp.workprec(max(bits, 4 * digits + 64)):
            return [_linear_root(coeffs)], bits, 0
    z = None
    total = 0
    target = mpf(10) ** (-digits)
    while bits <= max_bits:
        with mp.workprec(bits):
            if z is None:
                z = [mpc(g.real, g.imag) for g in initial_guesses(coeffs)]
            else:
                z = [mpc(w) for w in z]
            tol = mpf(2) ** (-(bits // 2))
            z, sweeps = _aberth(coeffs, z, tol, max_sweeps=100 + 2 * n)
            total += sweeps
            radii = [inclusion_radius(coeffs, w) for w in z]
            worst = max(r / max(mpf(1), abs(w)) for r, w in zip(radii, z))
            if worst < target:
                clash = _disks_disjoint(z, radii)
                if clash is None:
                    roots = [CertifiedRoot(w.real, w.imag, r) for w, r in zip(z, radii)]
                    history.append((bits, "certified"))
                    return roots, bits, total
                history.append((bits, f"disks {clash[0]} and {clash[1]} overlap"))
            else:
                history.append((bits, f"relative radius {mpmath.nstr(worst, 3)}"))
        bits *= 2
    raise EscalationError(f"certification failed below {max_bits} bits",
                          {"history": history, "degree": n})


def _root_key(r: CertifiedRoot):
    return (-r.re, -r.im)


def solve(p: IntPolynomial, digits: int = DEFAULT_DIGITS, *, start_bits: int = START_BITS,
          max_bits: Optional[int] = None) -> RootSolution:
    """All ``deg p`` roots with multiplicity, each with a certified inclusion radius.

    Roots are returned sorted by decreasing real part, then decreasing
    imaginary part.
    """
    if digits < 1:
        raise DomainError("digits must be >= 1")
    coeffs = list(p.coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        raise DomainError("polynomial must have degree >= 1")
    max_bits = max_bits_default() if max_bits is None else max_bits
    bits = max(start_bits, int(3.33 * digits) + 64)
    history: list = []

    zero_mult = 0
    while coeffs[0] == 0:
        coeffs.pop(0)
        zero_mult += 1
    roots = [CertifiedRoot(mpf(0), mpf(0), mpf(0))] * zero_mult
    work = IntPolynomial(tuple(coeffs))
    used = bits
    sweeps = 0
    simple = is_squarefree(work) if work.degree >= 1 else True
    squarefree = simple and zero_mult <= 1
    if work.degree >= 1:
        parts = [(work, 1)] if simple else squarefree_factors(work)
        for factor, mult in parts:
            found, b, s = _solve_squarefree(list(factor.coeffs), digits, bits, max_bits, history)
            used = max(used, b)
            sweeps += s
            roots.extend(r for r in found for _ in range(mult))
    distinct = list({(r.re, r.im): r for r in roots}.values())
    with mp.workprec(used):
        clash = _disks_disjoint([r.value for r in distinct], [r.radius for r in distinct])
    if clash is not None:
        raise EscalationError("disks of distinct roots from different factors overlap",
                              {"history": history})
    roots.sort(key=_root_key)
    return RootSolution(roots, used, sweeps, squarefree, digits, history)


def all_roots(p: IntPolynomial, digits: int = DEFAULT_DIGITS, **kwargs) -> list[CertifiedRoot]:
    return solve(p, digits, **kwargs).roots


def ehrhart_roots(d: int, digits: int = DEFAULT_DIGITS, **kwargs) -> RootSolution:
    return solve(ehrhart_int_poly(d), digits, **kwargs)


# ------------------------------------------------------------------ summaries

def _precision_for(roots: Sequence[CertifiedRoot]) -> int:
    """Enough bits to hold every coordinate of ``roots`` exactly, plus guard bits."""
    bits = START_BITS
    for r in roots:
        for x in (r.re, r.im, r.radius):
            bits = max(bits, int(x._mpf_[3]) + 64)
    return bits


def max_real_part(roots: Sequence[CertifiedRoot]) -> tuple[mpf, mpf]:
    """Certified enclosure ``[lo, hi]`` of the largest real part."""
    if not roots:
        raise DomainError("no roots given")
    lo = max(mpmath.fsub(r.re, r.radius, exact=True) for r in roots)
    hi = max(mpmath.fadd(r.re, r.radius, exact=True) for r in roots)
    return lo, hi


def min_real_part(roots: Sequence[CertifiedRoot]) -> tuple[mpf, mpf]:
    if not roots:
        raise DomainError("no roots given")
    lo = min(mpmath.fsub(r.re, r.radius, exact=True) for r in roots)
    hi = min(mpmath.fadd(r.re, r.radius, exact=True) for r in roots)
    return lo, hi


def symmetry_defect(roots: Sequence[CertifiedRoot]) -> mpf:
    """``max_a min_b |(-1 - a) - b|`` over the root approximations."""
    if not roots:
        raise DomainError("no roots given")
    with mp.workprec(_precision_for(roots)):
        vals = [r.value for r in roots]
        worst = mpf(0)
        for a in vals:
            m = min(abs(-1 - a - b) for b in vals)
            worst = max(worst, m)
        return +worst


def vieta_sum_ok(p: IntPolynomial, roots: Sequence[CertifiedRoot]) -> bool:
    """``|sum z - (-c_{n-1}/c_n)| <= sum radii``, decided exactly."""
    c = p.coeffs
    target = Fraction(-c[-2], c[-1])
    sr = sum(_to_fraction(r.re) for r in roots) - target
    si = sum(_to_fraction(r.im) for r in roots)
    bound = sum(_to_fraction(r.radius) for r in roots)
    return sr * sr + si * si <= bound * bound


def vieta_product_ok(p: IntPolynomial, roots: Sequence[CertifiedRoot]) -> bool:
    """``|prod z - (-1)^n c_0/c_n| <= prod(|z|+r) - prod|z|`` at doubled precision."""
    c = p.coeffs
    n = len(c) - 1
    with mp.workprec(2 * _precision_for(roots) + 32 * n.bit_length()):
        target = mpf((-1) ** n * c[0]) / c[-1]
        prod = mpc(1)
        absprod = mpf(1)
        grown = mpf(1)
        for r in roots:
            prod *= r.value
            a = abs(r.value)
            absprod *= a
            grown *= a + r.radius
        lhs = abs(prod - target)
        rhs = grown - absprod
        slack = absprod * mpf(2) ** (-(mp.prec // 3))
        return lhs <= rhs + slack


def residual_ok(p: IntPolynomial, roots: Sequence[CertifiedRoot]) -> bool:
    """``|p(z_i)| <= |c_n| r_i prod_{j != i} (|z_i - z_j| + r_j)`` for every root."""
    c = p.coeffs
    with mp.workprec(2 * _precision_for(roots) + max(abs(x) for x in c).bit_length()):
        vals = [r.value for r in roots]
        for i, r in enumerate(roots):
            z = vals[i]
            acc = mpc(0)
            for cj in reversed(c):
                acc = acc * z + cj
            bound = abs(c[-1]) * r.radius
            for j, w in enumerate(vals):
                if j != i:
                    bound *= abs(z - w) + roots[j].radius
            if abs(acc) > bound * (1 + mpf(2) ** -30):
                return False
    return True


# ---------------------------------------------------------- conjecture flags

FLAG_NAMES = (
    "violates_dstrip_upper",
    "violates_dstrip_lower",
    "violates_fano_upper",
    "violates_fano_lower",
    "exceeds_dimension",
)


class Undecided(Exception):
    pass


@dataclass
class ConjectureReport:
    d: int
    D: int
    max_re_lower: mpf
    max_re_upper: mpf
    min_re_lower: mpf
    min_re_upper: mpf
    flags: dict[str, bool]
    digits: int

    @property
    def max_re(self) -> mpf:
        return mpmath.ldexp(mpmath.fadd(self.max_re_lower, self.max_re_upper, exact=True), -1)

    @property
    def max_re_radius(self) -> mpf:
        return mpmath.ldexp(mpmath.fsub(self.max_re_upper, self.max_re_lower, exact=True), -1)


def _above(interval, threshold) -> bool:
    lo, hi = interval
    if lo > threshold:
        return True
    if hi <= threshold:
        return False
    raise Undecided(threshold)


def _below(interval, threshold) -> bool:
    lo, hi = interval
    if hi < threshold:
        return True
    if lo >= threshold:
        return False
    raise Undecided(threshold)


def decide_flags(d: int, hi_iv, lo_iv) -> dict[str, bool]:
    D = d - 1
    half = Fraction(D, 2)
    return {
        "violates_dstrip_upper": _above(hi_iv, D - 1),
        "violates_dstrip_lower": _below(lo_iv, -D),
        "violates_fano_upper": _above(hi_iv, mpf(half.numerator) / half.denominator - 1),
        "violates_fano_lower": _below(lo_iv, -mpf(half.numerator) / half.denominator),
        "exceeds_dimension": _above(hi_iv, D),
    }


def conjecture_report(d: int, roots: Optional[Sequence[CertifiedRoot]] = None,
                      digits: int = DEFAULT_DIGITS, *, max_bits: Optional[int] = None) -> ConjectureReport:
    """Decide the five root-location flags from certified enclosures.

    If a threshold falls inside an enclosure the roots are recomputed with
    twice as many digits until every flag is decided.
    """
    D = d - 1
    max_bits = max_bits_default() if max_bits is None else max_bits
    if roots is None:
        roots = ehrhart_roots(d, digits, max_bits=max_bits).roots
    while True:
        hi_iv = max_real_part(roots)
        lo_iv = min_real_part(roots)
        try:
            flags = decide_flags(d, hi_iv, lo_iv)
        except Undecided as exc:
            digits *= 2
            if 3.33 * digits > max_bits:
                raise EscalationError(f"threshold {exc.args[0]} not separated below ceiling") from None
            roots = ehrhart_roots(d, digits, max_bits=max_bits).roots
            continue
        return ConjectureReport(d, D, hi_iv[0], hi_iv[1], lo_iv[0], lo_iv[1], flags, digits)
