"""Tests for admissible sets and their refinements."""

import random

import pytest

from coxtype.config import Config
from coxtype.core.admissible import (
    adm,
    basic_element,
    direct_equality,
    is_coxeter_type_direct,
    is_twisted_coxeter,
    k_adm,
    k_adm_0,
    k_cox,
    sigma_support,
    twisted_perm,
)
from coxtype.core.classifier import stable_subsets
from coxtype.core.weyl import group_for
from coxtype.exceptions import BudgetExceededError
from coxtype.utils.notation import format_element


def texts(d, elements):
    g = group_for(d.affine_type)
    return {format_element(g, w) for w in elements}


class TestAdm:
    """Tests for the mu-admissible set."""

    @pytest.mark.parametrize(
        "text, size",
        [
            ("A1:id:mu=[1]:K={}", 3),
            ("A2:id:mu=[1,0]:K={}", 7),
            ("A3:id:mu=[1,0,0]:K={}", 15),
            ("A3:id:mu=[0,1,0]:K={}", 33),
            ("C2:id:mu=[0,1]:K={}", 13),
            ("A1:id:mu=[2]:K={}", 5),
        ],
    )
    def test_sizes(self, datum, text, size):
        assert len(adm(datum(text))) == size

    def test_contains_translations(self, datum):
        d = datum("A3:id:mu=[0,1,0]:K={}")
        g = group_for(d.affine_type)
        for coweight in g.finite_orbit((0, 1, 0)):
            assert g.translation(coweight) in adm(d)

    def test_single_kottwitz_class(self, a3_omega2):
        g = group_for(a3_omega2.affine_type)
        assert {g.kottwitz(w) for w in adm(a3_omega2)} == {basic_element(a3_omega2)}

    def test_budget(self, a3_omega2):
        with pytest.raises(BudgetExceededError):
            adm(a3_omega2, Config(adm_budget=3))


class TestRefinements:
    """Tests for ^K Adm(mu), ^K Adm(mu)_0 and ^K Cox(mu)."""

    def test_k_adm_is_minimal_in_cosets(self, a3_omega2):
        g = group_for(a3_omega2.affine_type)
        for w in k_adm(a3_omega2):
            assert not any(g.is_left_descent(w, s) for s in a3_omega2.K)

    def test_chain_of_inclusions(self, a3_omega2):
        assert k_cox(a3_omega2) <= k_adm_0(a3_omega2) <= k_adm(a3_omega2) <= adm(a3_omega2)

    def test_a1_double(self, a1_double):
        assert texts(a1_double, k_adm_0(a1_double)) == {"1", "s0", "s1"}

    def test_a3_omega2(self, a3_omega2):
        assert texts(a3_omega2, k_adm_0(a3_omega2)) == {"tau2", "s0 . tau2", "s3 . tau2"}

    def test_siegel(self, siegel):
        assert texts(siegel, k_adm_0(siegel)) == {"tau2", "s1 . tau2", "s2 . tau2"}

    def test_siegel_twisted(self, siegel_twisted):
        assert texts(siegel_twisted, k_adm_0(siegel_twisted)) == {
            "tau2",
            "s1 . tau2",
            "s1 s2 . tau2",
            "s1 s0 . tau2",
        }

    def test_b3_chain(self, datum):
        d = datum("B3:Ad(tau1):mu=[1,0,0]:K={0,1,2}")
        assert texts(d, k_adm_0(d)) == {
            "tau1",
            "s3 . tau1",
            "s3 s2 . tau1",
            "s[3,1] . tau1",
            "s3 s2 s0 . tau1",
        }

    def test_harris_taylor(self, harris_taylor):
        assert texts(harris_taylor, k_adm_0(harris_taylor)) == {"tau1"}


class TestSupports:
    """Tests for sigma-supports and twisted Coxeter elements."""

    def test_basic_element_has_empty_support(self, a3_omega2):
        tau = basic_element(a3_omega2)
        assert sigma_support(tau, a3_omega2) == frozenset()
        assert is_twisted_coxeter(tau, a3_omega2)

    def test_support_is_closed_under_twist(self, a3_omega2):
        g = group_for(a3_omega2.affine_type)
        w = g.from_word([0], basic_element(a3_omega2))
        assert sigma_support(w, a3_omega2) == frozenset({0, 2})

    def test_twisted_perm_of_basic_element(self, drinfeld):
        assert twisted_perm(drinfeld, basic_element(drinfeld)).is_identity

    def test_repeated_orbit_is_not_coxeter(self, a3_omega2):
        g = group_for(a3_omega2.affine_type)
        w = g.from_word([0, 2], basic_element(a3_omega2))
        assert not is_twisted_coxeter(w, a3_omega2)

    def test_support_independent_of_reduced_word(self, datum):
        d = datum("A3:rho1*varsigma0:mu=[0,1,0]:K={}")
        g = group_for(d.affine_type)
        perm = twisted_perm(d, basic_element(d))
        rng = random.Random(11)
        elements = sorted(adm(d), key=lambda w: g.reduced_word(w)[0])
        for _ in range(50):
            w = rng.choice(elements)
            letters = []
            current = w
            while descents := g.left_descents(current):
                s = rng.choice(descents)
                letters.append(s)
                current = g.multiply(g.generators[s], current)
            assert perm.closure(letters) == sigma_support(w, d)


class TestDirectEquality:
    """Tests for ^K Cox(mu) == ^K Adm(mu)_0."""

    def test_table_cells(self, a1_double, a3_omega2, siegel, siegel_twisted):
        for d in (a1_double, a3_omega2, siegel, siegel_twisted):
            assert direct_equality(d)
            assert is_coxeter_type_direct(d)

    def test_rejected_by_inequalities(self, siegel_rejected):
        assert not is_coxeter_type_direct(siegel_rejected)

    def test_monotone_in_k(self, a3_omega2):
        for extra in (0, 3):
            bigger = a3_omega2.with_K(a3_omega2.K | {extra})
            assert is_coxeter_type_direct(bigger)

    @pytest.mark.slow
    def test_monotone_on_golden_cells(self, datum, golden_cell):
        d = datum(golden_cell)
        rd = d.root_data
        nodes = frozenset(rd.nodes)
        for bigger in stable_subsets(d.sigma, nodes):
            if bigger == nodes or not d.K <= bigger or not rd.is_finite_type(bigger):
                continue
            assert is_coxeter_type_direct(d.with_K(bigger)), sorted(bigger)


class TestOmegaStability:
    """Adm(mu) is stable under conjugation by length-zero elements."""

    @pytest.mark.parametrize(
        "text",
        [
            "A3:id:mu=[0,1,0]:K={}",
            "C2:id:mu=[0,1]:K={}",
            "A2:id:mu=[1,1]:K={}",
            "B3:id:mu=[1,0,0]:K={}",
            "A1xA1:id:mu=[1];[1]:K={};{}",
        ],
    )
    def test_conjugation(self, datum, text):
        d = datum(text)
        g = group_for(d.affine_type)
        elements = adm(d)
        for omega in g.omega_elements:
            assert {g.product(omega, w, g.inverse(omega)) for w in elements} == elements
