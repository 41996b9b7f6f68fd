import itertools

import pytest
from hypothesis import given, strategies as st

from symedge.combinatorics import CycleConfiguration, ehrhart_eval, r_count
from symedge.errors import ResourceLimitError
from symedge.lattice import count_points
from symedge.toric import (
    TermOrder,
    ToricBinomial,
    buchberger_verify,
    claimed_basis,
    claimed_basis_size,
    compare,
    kernel_membership,
    monomial_normal_form,
    normal_form,
    squarefree_counts_match,
    squarefree_xy_standard_count,
    standard_monomial_count,
)


def mono(cfg, **exps):
    """Build exponents from keywords like z=2, x1=1, y3=1."""
    e = [0] * cfg.nvars
    for name, v in exps.items():
        if name == "z":
            e[0] = v
        elif name[0] == "x":
            e[cfg.x(int(name[1:]))] = v
        else:
            e[cfg.y(int(name[1:]))] = v
    return tuple(e)


@pytest.fixture
def cfg3():
    return CycleConfiguration(3)


class TestOrder:
    def test_examples(self, cfg3):
        o = TermOrder(3)
        assert compare(mono(cfg3, x1=1), mono(cfg3, y1=1), o) == 1
        assert compare(mono(cfg3, z=2), mono(cfg3, x1=1, y1=1), o) == -1
        assert compare(mono(cfg3, x1=1, x2=1), mono(cfg3, z=1, y3=1), o) == 1

    def test_ranking(self):
        cfg = CycleConfiguration(4)
        o = TermOrder(4)
        names = [cfg.var_name(v) for v in o.ranking]
        assert names == ["z", "y4", "x4", "y3", "x3", "y2", "x2", "y1", "x1"]

    @given(st.lists(st.integers(0, 3), min_size=7, max_size=7),
           st.lists(st.integers(0, 3), min_size=7, max_size=7),
           st.lists(st.integers(0, 3), min_size=7, max_size=7))
    def test_term_order_axioms(self, a, b, c):
        o = TermOrder(3)
        a, b, c = tuple(a), tuple(b), tuple(c)
        assert o.compare(a, b) == -o.compare(b, a)
        assert (o.compare(a, b) == 0) == (a == b)
        ac = tuple(x + y for x, y in zip(a, c))
        bc = tuple(x + y for x, y in zip(b, c))
        assert o.compare(ac, bc) == o.compare(a, b)
        assert (o.key(a) < o.key(b)) == (o.compare(a, b) < 0)
        if sum(a) != sum(b):
            assert o.compare(a, b) == (1 if sum(a) > sum(b) else -1)


class TestBasis:
    def test_sizes_small(self):
        assert len(claimed_basis(3)) == 9
        assert len(claimed_basis(4)) == 10

    @pytest.mark.parametrize("d", range(3, 41))
    def test_size_formula(self, d):
        from math import comb
        k = (d + 1) // 2
        want = d + 2 * comb(d, k) if d % 2 else d + 2 * comb(d - 1, k)
        assert claimed_basis_size(d) == want

    @pytest.mark.parametrize("d", range(3, 12))
    def test_enumeration_matches_formula(self, d):
        assert len(claimed_basis(d)) == claimed_basis_size(d)

    def test_contains_named_binomial(self, cfg3):
        b = ToricBinomial(mono(cfg3, x1=1, x2=1), mono(cfg3, z=1, y3=1))
        assert b in claimed_basis(3)

    @pytest.mark.parametrize("d", range(3, 10))
    def test_shape(self, d):
        cfg = CycleConfiguration(d)
        o = TermOrder(d)
        for g in claimed_basis(d):
            assert g.is_homogeneous() and g.has_disjoint_supports()
            assert kernel_membership(g, cfg)
            assert o.compare(g.plus, g.minus) == 1


class TestKernel:
    def test_examples(self, cfg3):
        assert kernel_membership(ToricBinomial(mono(cfg3, x1=1, y1=1), mono(cfg3, z=2)), cfg3)
        assert kernel_membership(ToricBinomial(mono(cfg3, x1=1, x2=1), mono(cfg3, z=1, y3=1)), cfg3)
        assert not kernel_membership(ToricBinomial(mono(cfg3, x1=1), mono(cfg3, y1=1)), cfg3)

    def test_dimension_mismatch(self, cfg3):
        with pytest.raises(ValueError):
            kernel_membership(ToricBinomial((1, 0), (0, 1)), cfg3)

    def test_validation(self):
        with pytest.raises(ValueError):
            ToricBinomial((1, 0), (0, 1, 0))
        with pytest.raises(ValueError):
            ToricBinomial((-1, 0), (0, 1))


class TestNormalForm:
    def test_self_reduction(self, cfg3):
        o = TermOrder(3)
        basis = claimed_basis(3)
        for g in basis:
            assert normal_form(g, basis, o) is None

    def test_one_step(self, cfg3):
        o = TermOrder(3)
        g = ToricBinomial(mono(cfg3, x1=1, y1=1), mono(cfg3, z=2))
        b = ToricBinomial(mono(cfg3, x1=2, y1=1), mono(cfg3, x1=1, z=2))
        assert normal_form(b, [g], o) is None

    def test_no_divisor(self, cfg3):
        o = TermOrder(3)
        g = ToricBinomial(mono(cfg3, x1=1, y1=1), mono(cfg3, z=2))
        b = ToricBinomial(mono(cfg3, x1=1, x2=1, y3=1), mono(cfg3, z=3))
        assert normal_form(b, [g], o) == b

    @given(st.lists(st.integers(0, 2), min_size=7, max_size=7))
    def test_normal_form_is_standard_and_idempotent(self, e):
        o = TermOrder(3)
        basis = claimed_basis(3)
        u = monomial_normal_form(tuple(e), basis, o)
        assert not any(all(a <= b for a, b in zip(g.plus, u)) for g in basis)
        assert monomial_normal_form(u, basis, o) == u
        assert sum(u) == sum(e)
        # same image under the monomial map
        cfg = CycleConfiguration(3)
        assert kernel_membership(ToricBinomial(tuple(e), u), cfg)


class TestStandardMonomials:
    def test_examples(self):
        assert standard_monomial_count(5, 0) == 1
        assert standard_monomial_count(3, 1) == 7
        assert standard_monomial_count(3, 2) == 19
        assert [standard_monomial_count(5, m) for m in range(5)] == [1, 11, 61, 211, 551]

    def test_brute_force_d3(self):
        basis = claimed_basis(3)
        for m in range(5):
            total = 0
            for e in itertools.product(range(m + 1), repeat=7):
                if sum(e) == m and not any(all(a <= b for a, b in zip(g.plus, e)) for g in basis):
                    total += 1
            assert standard_monomial_count(3, m) == total

    @pytest.mark.parametrize("d", [3, 4, 5, 6])
    def test_three_way(self, d):
        for m in range(6):
            assert standard_monomial_count(d, m) == ehrhart_eval(d, m) == count_points(d, m)

    def test_guard(self):
        with pytest.raises(ResourceLimitError):
            standard_monomial_count(8, 1)
        with pytest.raises(ResourceLimitError):
            standard_monomial_count(3, 7)

    @pytest.mark.parametrize("d", range(3, 8))
    def test_squarefree_identity(self, d):
        assert squarefree_counts_match(d)
        assert squarefree_xy_standard_count(d, d) == r_count(d, d) == 0


class TestVerifier:
    @pytest.mark.parametrize("d", range(3, 8))
    def test_passes(self, d):
        rep = buchberger_verify(d)
        assert rep.passed, rep.failures
        assert set(rep.checks) == {"kernel", "initial", "spairs", "reduced", "squarefree", "hilbert"}
        assert rep.basis_size == claimed_basis_size(d)

    def test_d5_hilbert_values(self):
        rep = buchberger_verify(5, m_max=4)
        assert [h[1] for h in rep.hilbert] == [1, 11, 61, 211, 551]

    def test_missing_element_detected(self):
        basis = claimed_basis(5)
        rep = buchberger_verify(5, basis=basis[1:])
        assert not rep.passed
        assert not rep.checks["hilbert"]

    def test_non_member_detected(self):
        cfg = CycleConfiguration(3)
        basis = claimed_basis(3) + [ToricBinomial(mono(cfg, x1=1), mono(cfg, y1=1))]
        rep = buchberger_verify(3, basis=basis)
        assert not rep.checks["kernel"]
        assert not rep.checks["reduced"]

    def test_non_reduced_detected(self):
        cfg = CycleConfiguration(3)
        extra = ToricBinomial(mono(cfg, x1=2, y1=1), mono(cfg, x1=1, z=2))
        rep = buchberger_verify(3, basis=claimed_basis(3) + [extra])
        assert not rep.checks["reduced"] and not rep.checks["squarefree"]

    def test_wrong_orientation_detected(self):
        basis = claimed_basis(3)
        flipped = [ToricBinomial(basis[0].minus, basis[0].plus)] + basis[1:]
        rep = buchberger_verify(3, basis=flipped)
        assert not rep.checks["initial"]

    def test_guard(self):
        with pytest.raises(ResourceLimitError):
            buchberger_verify(8)
