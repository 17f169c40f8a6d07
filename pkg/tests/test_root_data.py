"""Tests for root data, diagram automorphisms and data validation."""

from fractions import Fraction

import pytest

from coxtype.core.root_data import (
    LONG,
    SHORT,
    AffineType,
    ComponentType,
    Coweight,
    DiagramAutomorphism,
    Family,
    named_automorphism,
    quasi_simple_factors,
    root_data_for,
)
from coxtype.exceptions import SemanticError


def rd(label: str):
    return root_data_for(AffineType.from_label(label))


class TestComponentType:
    """Tests for component labels."""

    def test_from_label(self):
        ctype = ComponentType.from_label("D5")
        assert ctype.family is Family.D
        assert ctype.rank == 5

    def test_b2_becomes_c2(self):
        assert ComponentType.from_label("B2").label == "C2"

    def test_lowercase_accepted(self):
        assert ComponentType.from_label("e6").label == "E6"

    @pytest.mark.parametrize("label", ["D3", "E5", "F3", "G3", "B1"])
    def test_inadmissible_rank(self, label):
        with pytest.raises(SemanticError):
            ComponentType.from_label(label)

    def test_unknown_family(self):
        with pytest.raises(SemanticError, match="component-type"):
            ComponentType.from_label("X3")


class TestAffineType:
    """Tests for products of components."""

    def test_product_label(self):
        t = AffineType.from_label("A2xA2")
        assert t.label == "A2xA2"
        assert t.rank == 4
        assert t.node_count == 6


class TestPairings:
    """<omega_i^vee, 2 rho> for the fundamental coweights."""

    @pytest.mark.parametrize(
        "label, expected",
        [
            ("A1", (1,)),
            ("A3", (3, 4, 3)),
            ("B3", (5, 8, 9)),
            ("C2", (4, 3)),
            ("C3", (6, 10, 6)),
            ("D4", (6, 10, 6, 6)),
            ("G2", (10, 6)),
            ("F4", (16, 30, 42, 22)),
            ("E6", (16, 22, 30, 42, 30, 16)),
            ("E7", (34, 49, 66, 96, 75, 52, 27)),
            ("E8", (92, 136, 182, 270, 220, 168, 114, 58)),
        ],
    )
    def test_two_rho(self, label, expected):
        assert rd(label).fundamental_pairings() == expected

    def test_pairing_of_coweight(self):
        assert rd("A3").pairing((1, 0, 1)) == 6


class TestRoots:
    """Tests for roots, coroots and the Cartan matrix."""

    @pytest.mark.parametrize(
        "label, count", [("A3", 6), ("B3", 9), ("C3", 9), ("D4", 12), ("G2", 6), ("F4", 24), ("E6", 36)]
    )
    def test_positive_root_count(self, label, count):
        assert len(rd(label).positive_roots) == count

    def test_affine_root_is_minus_theta(self):
        data = rd("A3")
        assert data.alpha(0) == (-1, -1, -1)

    def test_simple_coroot_pairs_to_two(self):
        data = rd("C3")
        for s in data.nodes:
            assert data.affine_cartan(s, s) == 2

    def test_long_and_short_nodes(self):
        data = rd("C2")
        assert data.is_long(0)
        assert not data.is_long(1)
        assert data.is_long(2)

    def test_minuscule_nodes(self):
        assert rd("C2").minuscule_nodes(0) == (2,)
        assert rd("B3").minuscule_nodes(0) == (1,)
        assert rd("D4").minuscule_nodes(0) == (1, 3, 4)
        assert rd("E8").minuscule_nodes(0) == ()

    def test_euclidean_coweight_of_omega_1(self):
        data = rd("C2")
        vec = data.euclidean_coweight(Coweight.of([1, 0]))
        assert vec == ((Fraction(1), Fraction(0)),)


class TestDynkinDiagram:
    """Tests for the diagram and its automorphisms."""

    @pytest.mark.parametrize(
        "label, count", [("A1", 2), ("A3", 8), ("B3", 2), ("C2", 2), ("D4", 24), ("D5", 8), ("G2", 1), ("E6", 6)]
    )
    def test_automorphism_count(self, label, count):
        assert len(rd(label).automorphisms) == count

    def test_double_bonds(self):
        assert rd("C2").double_bonds() == [(0, 1), (1, 2)]
        assert rd("B3").double_bonds() == [(2, 3)]
        assert rd("A3").double_bonds() == []

    def test_finite_type(self):
        data = rd("A2xA2")
        assert data.is_finite_type({0, 1, 3, 4})
        assert not data.is_finite_type({0, 1, 2})

    def test_orientation_keys(self):
        assert rd("B3").orientation_keys() == (3,)
        assert rd("C2").orientation_keys() == (0, 2)
        assert rd("A3").orientation_keys() == ()

    def test_longer_node_follows_orientation(self):
        data = rd("C2")
        assert data.longer_node((0, 1), {0: LONG}) == 0
        assert data.longer_node((0, 1), {0: SHORT}) == 1
        assert data.long_side_nodes({0: SHORT, 2: SHORT}) == frozenset({1})


class TestNamedAutomorphisms:
    """Tests for the automorphism catalogue."""

    def test_rotation(self):
        sigma = named_automorphism("rho1", AffineType.from_label("A3"))
        assert sigma.perm == (1, 2, 3, 0)

    def test_flip(self):
        sigma = named_automorphism("varsigma0", AffineType.from_label("A3"))
        assert sigma.perm == (0, 3, 2, 1)

    def test_unicode_aliases(self):
        t = AffineType.from_label("A3")
        assert named_automorphism("ϱ2", t).perm == named_automorphism("rho2", t).perm
        assert named_automorphism("ς0", t).perm == named_automorphism("varsigma0", t).perm

    def test_composition_order(self):
        t = AffineType.from_label("A3")
        composed = named_automorphism("rho1*varsigma0", t)
        rho, flip = named_automorphism("rho1", t), named_automorphism("varsigma0", t)
        assert composed.perm == rho.compose(flip).perm

    def test_ad_tau_in_c2(self):
        sigma = named_automorphism("Ad(tau2)", AffineType.from_label("C2"))
        assert sigma.perm == (2, 1, 0)

    def test_swap(self):
        sigma = named_automorphism("swap", AffineType.from_label("A1xA1"))
        assert sigma.perm == (2, 3, 0, 1)

    def test_rho_outside_type_a(self):
        with pytest.raises(SemanticError, match="sigma-name"):
            named_automorphism("rho1", AffineType.from_label("C2"))

    def test_explicit_permutation_must_preserve_cartan(self):
        with pytest.raises(SemanticError, match="sigma-preserves-cartan"):
            named_automorphism("perm[1,0,2]", AffineType.from_label("C2"))


class TestDiagramAutomorphism:
    """Tests for orbit bookkeeping."""

    def test_orbits_sorted(self):
        sigma = DiagramAutomorphism((0, 3, 2, 1))
        assert sigma.orbits() == [frozenset({0}), frozenset({1, 3}), frozenset({2})]

    def test_order(self):
        assert DiagramAutomorphism((1, 2, 3, 0)).order == 4

    def test_closure_and_stability(self):
        sigma = DiagramAutomorphism((0, 3, 2, 1))
        assert sigma.closure({1}) == frozenset({1, 3})
        assert sigma.is_stable({1, 3})
        assert not sigma.is_stable({1})


class TestCoxeterDatum:
    """Tests for invariants enforced on construction."""

    def test_quasi_simple_factors_of_product(self, datum):
        d = datum("A1xA1:id:mu=[1];[1]:K={1};{}")
        factors = quasi_simple_factors(d)
        assert [f.affine_type.label for f in factors] == ["A1", "A1"]
        assert factors[0].K == frozenset({1})
        assert factors[1].K == frozenset()

    def test_swap_is_quasi_simple(self, datum):
        assert datum("A1xA1:swap:mu=[1];[1]:K={}").is_quasi_simple

    def test_with_k(self, a3_omega2):
        assert a3_omega2.with_K({1}).K == frozenset({1})

    def test_lhs(self, a3_omega2):
        assert a3_omega2.lhs == 4
