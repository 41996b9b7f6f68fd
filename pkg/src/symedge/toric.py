"""Toric ideal of ``A_d``: the claimed reduced Groebner basis and its verification.

Monomials are exponent tuples over the ``2d + 1`` variables in the order
``z, x_1..x_d, y_1..y_d``.  The term order is graded reverse lexicographic
with ranking ``z < y_d < x_d < y_{d-1} < ... < y_1 < x_1``.

Since every basis element is a binomial with unit coefficients, the normal
form of a monomial is again a monomial and a binomial ``u - v`` reduces to
zero exactly when ``u`` and ``v`` share a normal form.  No field arithmetic
is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

from symedge.combinatorics import CycleConfiguration, _check_d, ehrhart_eval, half_up, r_count
from symedge.errors import ResourceLimitError

Monomial = tuple[int, ...]

MAX_D = 7
MAX_M = 6


@dataclass(frozen=True)
class ToricBinomial:
    """``u - v`` with ``plus`` the exponents of ``u`` and ``minus`` those of ``v``."""

    plus: Monomial
    minus: Monomial

    def __post_init__(self):
        if len(self.plus) != len(self.minus):
            raise ValueError("monomials must have the same number of variables")
        if min(self.plus, default=0) < 0 or min(self.minus, default=0) < 0:
            raise ValueError("exponents must be nonnegative")

    @property
    def nvars(self) -> int:
        return len(self.plus)

    def is_homogeneous(self) -> bool:
        return sum(self.plus) == sum(self.minus)

    def has_disjoint_supports(self) -> bool:
        return all(a == 0 or b == 0 for a, b in zip(self.plus, self.minus))

    def format(self, cfg: CycleConfiguration) -> str:
        return f"{format_monomial(self.plus, cfg)} - {format_monomial(self.minus, cfg)}"


def format_monomial(mono: Monomial, cfg: CycleConfiguration) -> str:
    parts = []
    for j, e in enumerate(mono):
        if e == 1:
            parts.append(cfg.var_name(j))
        elif e > 1:
            parts.append(f"{cfg.var_name(j)}^{e}")
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class TermOrder:
    """Graded reverse lexicographic order for the cycle of length ``d``.

    ``ranking`` lists variable indices from the least variable upward.
    """

    d: int
    ranking: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        d = self.d
        rank = [0]
        for i in range(d, 0, -1):
            rank += [d + i, i]  # y_i below x_i
        object.__setattr__(self, "ranking", tuple(rank))

    def compare(self, a: Monomial, b: Monomial) -> int:
        """Return 1 if ``a > b``, -1 if ``a < b``, 0 if equal."""
        if len(a) != len(b):
            raise ValueError("monomials must have the same number of variables")
        da, db = sum(a), sum(b)
        if da != db:
            return 1 if da > db else -1
        for v in self.ranking:
            if a[v] != b[v]:
                # smaller exponent on the least variable that differs wins
                return 1 if a[v] < b[v] else -1
        return 0

    def key(self, a: Monomial):
        """Sort key consistent with :meth:`compare`."""
        return (sum(a),) + tuple(-a[v] for v in self.ranking)


def compare(a: Monomial, b: Monomial, order: TermOrder) -> int:
    return order.compare(a, b)


def _mono(cfg: CycleConfiguration, xs=(), ys=(), z=0) -> Monomial:
    e = [0] * cfg.nvars
    e[0] = z
    for i in xs:
        e[cfg.x(i)] += 1
    for i in ys:
        e[cfg.y(i)] += 1
    return tuple(e)


def claimed_basis(d: int) -> list[ToricBinomial]:
    """The binomials asserted to form the reduced Groebner basis.

    Within each family the binomials are listed lexicographically by the
    index set carrying ``k`` elements.
    """
    cfg = CycleConfiguration(d)
    k = cfg.k
    out = [ToricBinomial(_mono(cfg, xs=[i], ys=[i]), _mono(cfg, z=2)) for i in range(1, d + 1)]
    if d % 2 == 1:
        ground = range(1, d + 1)
        for big in itertools.combinations(ground, k):
            rest = [j for j in ground if j not in big]
            out.append(ToricBinomial(_mono(cfg, xs=big), _mono(cfg, ys=rest, z=1)))
        for big in itertools.combinations(ground, k):
            rest = [j for j in ground if j not in big]
            out.append(ToricBinomial(_mono(cfg, ys=big), _mono(cfg, xs=rest, z=1)))
    else:
        ground = range(1, d)
        for big in itertools.combinations(ground, k):
            rest = [j for j in ground if j not in big]
            out.append(ToricBinomial(_mono(cfg, xs=big), _mono(cfg, ys=list(rest) + [d])))
        for big in itertools.combinations(ground, k):
            rest = [j for j in ground if j not in big]
            out.append(ToricBinomial(_mono(cfg, ys=big), _mono(cfg, xs=list(rest) + [d])))
    return out


def claimed_basis_size(d: int) -> int:
    _check_d(d)
    k = half_up(d)
    return d + 2 * comb(d if d % 2 else d - 1, k)


def kernel_membership(b: ToricBinomial, cfg: CycleConfiguration) -> bool:
    """Whether ``A_d`` annihilates ``plus - minus``."""
    if b.nvars != cfg.nvars:
        raise ValueError(f"binomial has {b.nvars} variables, configuration has {cfg.nvars}")
    diff = [p - q for p, q in zip(b.plus, b.minus)]
    for row in range(cfg.d + 1):
        if sum(col[row] * e for col, e in zip(cfg.columns, diff)):
            return False
    return True


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def oriented(b: ToricBinomial, order: TermOrder) -> ToricBinomial:
    """Return ``b`` up to sign with the larger monomial in ``plus``."""
    if order.compare(b.plus, b.minus) < 0:
        return ToricBinomial(b.minus, b.plus)
    return b


def monomial_normal_form(u: Monomial, basis: Sequence[ToricBinomial], order: TermOrder) -> Monomial:
    """Rewrite ``u`` by ``plus -> minus`` until no initial monomial divides it."""
    key = order.key
    current = u
    while True:
        for g in basis:
            if _divides(g.plus, current):
                nxt = tuple(c - a + b for c, a, b in zip(current, g.plus, g.minus))
                assert key(nxt) < key(current), "reduction failed to decrease"
                current = nxt
                break
        else:
            return current


def normal_form(b: ToricBinomial, basis: Sequence[ToricBinomial], order: TermOrder) -> Optional[ToricBinomial]:
    """Fully reduced form of ``b``, or ``None`` if it reduces to zero.

    ``basis`` must already be oriented so that ``plus`` is the initial term.
    """
    u = monomial_normal_form(b.plus, basis, order)
    v = monomial_normal_form(b.minus, basis, order)
    if u == v:
        return None
    return oriented(ToricBinomial(u, v), order)


def s_binomial(f: ToricBinomial, g: ToricBinomial) -> ToricBinomial:
    L = _lcm(f.plus, g.plus)
    a = tuple(l - p + m for l, p, m in zip(L, f.plus, f.minus))
    b = tuple(l - p + m for l, p, m in zip(L, g.plus, g.minus))
    return ToricBinomial(a, b)


@dataclass
class VerificationReport:
    d: int
    basis_size: int
    checks: dict[str, bool]
    failures: list[str]
    spairs_total: int = 0
    spairs_skipped: int = 0
    hilbert: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def standard_monomial_count(d: int, m: int, basis: Optional[Sequence[ToricBinomial]] = None, *,
                            max_d: int = MAX_D, max_m: int = MAX_M) -> int:
    """Degree-``m`` monomials divisible by no initial monomial of ``basis``.

    Initial monomials must be squarefree, so divisibility is support
    containment.  Admissible supports are enumerated and each contributes
    the number of compositions of ``m`` into that many positive parts.
    """
    _check_d(d)
    if d > max_d or m > max_m:
        raise ResourceLimitError(f"standard monomial count limited to d <= {max_d}, m <= {max_m}")
    if m < 0:
        return 0
    if m == 0:
        return 1
    basis = claimed_basis(d) if basis is None else basis
    forbidden = []
    for g in basis:
        if max(g.plus) > 1:
            raise ValueError("initial monomials must be squarefree")
        forbidden.append(frozenset(j for j, e in enumerate(g.plus) if e))
    by_size = _face_sizes(2 * d + 1, forbidden, m)
    return sum(cnt * comb(m - 1, s - 1) for s, cnt in by_size.items() if s >= 1)


def _face_sizes(nvars: int, forbidden: list[frozenset], max_size: int) -> dict[int, int]:
    """Count subsets of up to ``max_size`` variables containing no forbidden set."""
    by_var: dict[int, list[frozenset]] = {v: [] for v in range(nvars)}
    for f in forbidden:
        by_var[max(f)].append(f)
    counts: dict[int, int] = {}

    def walk(face: set, start: int) -> None:
        counts[len(face)] = counts.get(len(face), 0) + 1
        if len(face) == max_size:
            return
        for v in range(start, nvars):
            face.add(v)
            if not any(f <= face for f in by_var[v]):
                walk(face, v + 1)
            face.discard(v)

    walk(set(), 0)
    return counts


def squarefree_xy_standard_count(d: int, i: int, basis: Optional[Sequence[ToricBinomial]] = None) -> int:
    """Direct enumeration of squarefree degree-``i`` standard monomials in x/y only."""
    _check_d(d)
    if d > MAX_D:
        raise ResourceLimitError(f"enumeration limited to d <= {MAX_D}")
    basis = claimed_basis(d) if basis is None else basis
    forbidden = [frozenset(j for j, e in enumerate(g.plus) if e) for g in basis]
    total = 0
    for supp in itertools.combinations(range(1, 2 * d + 1), i):
        s = frozenset(supp)
        if not any(f <= s for f in forbidden):
            total += 1
    return total


def buchberger_verify(d: int, m_max: int = 5,
                      basis: Optional[Sequence[ToricBinomial]] = None) -> VerificationReport:
    """Check that the claimed binomials form the reduced Groebner basis of ``I_{A_d}``.

    Checks, each recorded by name in :attr:`VerificationReport.checks`:

    ``kernel``      every binomial lies in the toric ideal;
    ``initial``     the first listed monomial is the initial one;
    ``spairs``      every S-binomial reduces to zero (coprime pairs skipped);
    ``reduced``     no term of any element is divisible by another's initial term;
    ``squarefree``  all initial monomials are squarefree;
    ``hilbert``     degree-m standard monomial counts, 0 <= m <= m_max, equal
                    the Ehrhart values, so ``<G>`` and ``I_{A_d}`` agree there.

    ``basis`` replaces the claimed basis, for exercising the failure paths.
    """
    cfg = CycleConfiguration(d)
    if d > MAX_D:
        raise ResourceLimitError(f"Groebner verification limited to d <= {MAX_D}")
    order = TermOrder(d)
    basis = claimed_basis(d) if basis is None else list(basis)
    failures: list[str] = []
    checks: dict[str, bool] = {}

    bad = [g for g in basis if not kernel_membership(g, cfg)]
    failures += [f"not in kernel: {g.format(cfg)}" for g in bad]
    checks["kernel"] = not bad

    bad = [g for g in basis if order.compare(g.plus, g.minus) <= 0]
    failures += [f"first monomial not initial: {g.format(cfg)}" for g in bad]
    checks["initial"] = not bad

    basis = [oriented(g, order) for g in basis]
    total = skipped = 0
    ok = True
    for (a, f), (b, g) in itertools.combinations(enumerate(basis), 2):
        total += 1
        if all(x == 0 or y == 0 for x, y in zip(f.plus, g.plus)):
            skipped += 1
            continue
        r = normal_form(s_binomial(f, g), basis, order)
        if r is not None:
            ok = False
            failures.append(f"S({a},{b}) has nonzero normal form {r.format(cfg)}")
    checks["spairs"] = ok

    ok = True
    for a, f in enumerate(basis):
        for b, g in enumerate(basis):
            if a != b and _divides(g.plus, f.plus):
                ok = False
                failures.append(f"initial of {b} divides initial of {a}")
            if _divides(g.plus, f.minus):
                ok = False
                failures.append(f"initial of {b} divides trailing term of {a}")
    checks["reduced"] = ok

    bad = [g for g in basis if max(g.plus) > 1]
    failures += [f"non-squarefree initial monomial: {g.format(cfg)}" for g in bad]
    checks["squarefree"] = not bad

    hilbert = []
    ok = checks["squarefree"]
    if not ok:
        failures.append("Hilbert counts need a squarefree initial ideal; not compared")
    for m in range(m_max + 1 if ok else 0):
        got = standard_monomial_count(d, m, basis, max_m=max(m_max, MAX_M))
        want = ehrhart_eval(d, m)
        hilbert.append((m, got, want))
        if got != want:
            ok = False
            failures.append(f"degree {m}: {got} standard monomials, Ehrhart value {want}")
    checks["hilbert"] = ok

    return VerificationReport(d, len(basis), checks, failures, total, skipped, hilbert)


def squarefree_counts_match(d: int) -> bool:
    """Whether direct enumeration reproduces ``r_count(d, i)`` for all ``i``."""
    basis = claimed_basis(d)
    return all(squarefree_xy_standard_count(d, i, basis) == r_count(d, i) for i in range(d + 1))
