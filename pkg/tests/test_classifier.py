"""Tests for the inequality ledger, isomorphism reduction and the sweep."""

from fractions import Fraction

import pytest

from coxtype.core.classifier import (
    Inequality,
    canonical_form,
    check_condition_3,
    classify_sweep,
    failing_triples,
    find_coxeter_witness,
    maximal_stable_subsets,
    mu_candidates,
    preferred_form,
    rank_ss_G,
    rank_ss_J_tau,
    stable_subsets,
    sweep_types,
    xi_J,
)
from coxtype.core.root_data import DiagramAutomorphism
from coxtype.core.weyl import group_for
from coxtype.config import Config
from coxtype.exceptions import BudgetExceededError, PreconditionError


class TestRanks:
    """Tests for rank_ss(G) and rank_ss(J_tau)."""

    def test_rank_ss_g(self, a3_omega2, drinfeld):
        assert rank_ss_G(a3_omega2) == 3
        assert rank_ss_G(drinfeld) == 0

    def test_harris_taylor_rank(self, harris_taylor):
        assert rank_ss_J_tau(harris_taylor) == 0

    def test_drinfeld_rank(self, drinfeld):
        assert rank_ss_J_tau(drinfeld) == 3

    def test_a1_double(self, a1_double):
        assert rank_ss_J_tau(a1_double) == 1

    def test_product_needs_quasi_simple(self, datum):
        with pytest.raises(PreconditionError):
            rank_ss_J_tau(datum("A1xA1:id:mu=[1];[1]:K={}"))


class TestSubsets:
    """Tests for sigma-stable subsets."""

    def test_stable_subsets_identity(self):
        sigma = DiagramAutomorphism.identity(3)
        subsets = list(stable_subsets(sigma, frozenset({0, 1, 2})))
        assert len(subsets) == 8
        assert subsets[0] == frozenset()

    def test_stable_subsets_follow_orbits(self):
        sigma = DiagramAutomorphism((2, 1, 0))
        subsets = set(stable_subsets(sigma, frozenset({0, 1, 2})))
        assert subsets == {frozenset(), frozenset({1}), frozenset({0, 2}), frozenset({0, 1, 2})}

    def test_maximal_stable_subsets(self):
        sigma = DiagramAutomorphism((2, 1, 0))
        assert maximal_stable_subsets(sigma, frozenset({0, 1, 2})) == [
            frozenset({1}),
            frozenset({0, 2}),
        ]


class TestProjection:
    """Tests for xi_J."""

    def test_empty_j(self, a3_omega2):
        rd = a3_omega2.root_data
        assert xi_J((0, 1, 0), frozenset(), rd) == (0, 0, 0)

    def test_full_finite_j_is_identity(self, a3_omega2):
        rd = a3_omega2.root_data
        assert xi_J((0, 1, 0), frozenset({1, 2, 3}), rd) == (0, 1, 0)

    def test_single_node(self, a3_omega2):
        rd = a3_omega2.root_data
        # omega_2 restricted to the span of alpha_2^vee is alpha_2^vee / 2
        assert xi_J((0, 1, 0), frozenset({2}), rd) == (Fraction(-1, 2), Fraction(1), Fraction(-1, 2))


class TestConditionThree:
    """Tests for the inequality ledger."""

    @pytest.mark.parametrize(
        "text",
        [
            "A1:id:mu=[2]:K={}",
            "A3:id:mu=[0,1,0]:K={1,2}",
            "C2:id:mu=[0,1]:K={0}",
            "C2:Ad(tau2):mu=[0,1]:K={0,2}",
            "B3:Ad(tau1):mu=[1,0,0]:K={0,1,2}",
            "A3:rho3:mu=[1,0,0]:K={}",
        ],
    )
    def test_table_cells_pass(self, datum, text):
        result = check_condition_3(datum(text))
        assert result.passed
        assert result.failed is None
        assert result.witness is None

    def test_lhs_reported(self, a3_omega2):
        result = check_condition_3(a3_omega2)
        assert result.lhs == 4
        assert result.rank_ss_G == 3

    @pytest.mark.parametrize(
        "text, lhs",
        [
            ("E6:id:mu=[1,0,0,0,0,0]:K={}", 16),
            ("E7:id:mu=[0,0,0,0,0,0,1]:K={}", 27),
            ("E8:id:mu=[0,0,0,0,0,0,0,1]:K={}", 58),
            ("F4:id:mu=[1,0,0,0]:K={}", 16),
            ("G2:id:mu=[0,1]:K={}", 6),
        ],
    )
    def test_exceptional_types_fail_bound(self, datum, text, lhs):
        result = check_condition_3(datum(text))
        assert result.lhs == lhs
        assert not result.passed
        assert result.failed is Inequality.BOUND

    def test_rank_inequality(self, datum):
        result = check_condition_3(datum("A2:rho1:mu=[1,1]:K={}"))
        assert not result.passed
        assert result.failed is Inequality.RANKS
        assert (result.rank_ss_G, result.rank_ss_J) == (0, 0)

    def test_triple_witness(self, siegel_rejected):
        result = check_condition_3(siegel_rejected)
        assert not result.passed
        assert result.failed is Inequality.TRIPLE
        assert result.witness is not None
        assert siegel_rejected.K <= result.witness.K

    def test_failing_triples_listed(self, siegel_rejected, siegel_twisted):
        assert failing_triples(siegel_rejected)
        assert failing_triples(siegel_twisted) == []

    def test_product_is_conjunction(self, datum):
        result = check_condition_3(datum("A1xA1:id:mu=[1];[2]:K={}"))
        assert result.passed
        assert result.lhs == 3

    def test_product_reports_factor(self, datum):
        result = check_condition_3(datum("A1xG2:id:mu=[1];[0,1]:K={}"))
        assert not result.passed
        assert result.factor == 1


class TestCoxeterWitness:
    """Tests for the element attached to a failing triple."""

    def test_witness_length(self, siegel_rejected):
        triple = failing_triples(siegel_rejected)[0]
        g = group_for(siegel_rejected.affine_type)
        c = find_coxeter_witness(triple, siegel_rejected)
        orbits = siegel_rejected.sigma.orbits(triple.K_xi)
        assert g.length(c) == len(orbits)


class TestIsomorphism:
    """Tests for canonical and preferred forms."""

    def test_flip_gives_same_form(self, datum):
        a = datum("A3:id:mu=[1,0,0]:K={}")
        b = datum("A3:id:mu=[0,0,1]:K={}")
        assert canonical_form(a) == canonical_form(b)

    def test_different_k_differ(self, datum):
        a = datum("A3:id:mu=[0,1,0]:K={1,2}")
        b = datum("A3:id:mu=[0,1,0]:K={1}")
        assert canonical_form(a) != canonical_form(b)

    def test_rotated_k(self, datum):
        a = datum("A3:id:mu=[0,1,0]:K={1,2}")
        b = datum("A3:id:mu=[0,1,0]:K={2,3}")
        assert canonical_form(a) == canonical_form(b)

    def test_preferred_form_is_isomorphic(self, datum):
        d = datum("A3:id:mu=[0,0,1]:K={2,3}")
        assert canonical_form(preferred_form(d)) == canonical_form(d)
        assert preferred_form(d).sigma.name == "id"


class TestSweep:
    """Tests for the enumeration of minimal data."""

    def test_sweep_types(self):
        assert [t.label for t in sweep_types(2)] == ["A1", "A2", "C2", "G2", "A1xA1"]

    def test_mu_candidates_a1(self, datum):
        rd = datum("A1:id:mu=[1]:K={}").root_data
        assert mu_candidates(rd) == [(1,), (2,)]

    def test_mu_candidates_respect_bound(self, a3_omega2):
        rd = a3_omega2.root_data
        for mu in mu_candidates(rd):
            assert rd.pairing(mu) <= 2 * rd.rank
            assert any(mu)

    def test_rank_above_budget(self):
        with pytest.raises(BudgetExceededError):
            classify_sweep(3, Config(max_rank=2))

    def test_rank_one(self):
        found = {canonical_form(d) for d in classify_sweep(1)}
        assert len(found) == 3

    def test_results_pass_inequalities(self):
        for d in classify_sweep(2):
            assert check_condition_3(d).passed
