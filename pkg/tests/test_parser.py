"""Tests for the datum grammar parser."""

import pytest

from coxtype.core.parser import parse_datum, parse_orientation, render_datum
from coxtype.core.root_data import LONG, SHORT
from coxtype.exceptions import ParseError, SemanticError


class TestParseDatum:
    """Tests for parse_datum."""

    def test_simple(self):
        d = parse_datum("A3:id:mu=[0,1,0]:K={1,2}")
        assert d.affine_type.label == "A3"
        assert d.sigma.is_identity
        assert d.mu.as_ints() == (0, 1, 0)
        assert d.K == frozenset({1, 2})
        assert d.orientation is None

    def test_whitespace(self):
        assert parse_datum("  A1:id:mu=[ 2 ]:K={ }  ") == parse_datum("A1:id:mu=[2]:K={}")

    def test_product_nodes_are_global(self):
        d = parse_datum("A2xA2:id:mu=[1,0];[0,1]:K={1};{0,2}")
        assert d.K == frozenset({1, 3, 5})
        assert d.mu.as_ints() == (1, 0, 0, 1)

    def test_product_with_single_empty_k(self):
        d = parse_datum("A1xA1:swap:mu=[1];[1]:K={}")
        assert d.K == frozenset()

    def test_orientation(self):
        d = parse_datum("C2:id:mu=[1,0]:K={1}:orient=0=short,2=short")
        assert d.orientation_map() == {0: SHORT, 2: SHORT}

    def test_unicode_names(self):
        assert parse_datum("A3:ϱ2:mu=[0,1,0]:K={}").sigma.name == "rho2"


class TestB2Relabel:
    """B2 labels are accepted and moved onto C2."""

    def test_nodes_and_coweight(self):
        assert parse_datum("B2:id:mu=[1,0]:K={1}") == parse_datum("C2:id:mu=[0,1]:K={2}")

    def test_automorphism(self):
        assert parse_datum("B2:Ad(tau1):mu=[1,0]:K={0,1}") == parse_datum(
            "C2:Ad(tau2):mu=[0,1]:K={0,2}"
        )

    def test_rejected_in_products(self):
        with pytest.raises(SemanticError, match="component-type"):
            parse_datum("B2xA1:id:mu=[1,0];[1]:K={}")


class TestErrors:
    """Malformed and invalid data."""

    @pytest.mark.parametrize(
        "text",
        [
            "A3:id:mu=[0,1,0]",
            "A3:id:mu=[0,x,0]:K={}",
            "A3:id:mu=[0,1,0:K={}",
            "A3:id:nu=[0,1,0]:K={}",
            "A3:id:mu=[0,1,0]:K={}:orient=0=huge",
            "A3:id:mu=[0,1,0]:K={}:colour=red",
            "Z3:id:mu=[0,1,0]:K={}",
        ],
    )
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_datum(text)

    def test_position(self):
        with pytest.raises(ParseError) as excinfo:
            parse_datum("A3:id:mu=[0,x,0]:K={}")
        assert excinfo.value.position is not None

    @pytest.mark.parametrize(
        "text, invariant",
        [
            ("A3:id:mu=[0,1]:K={}", "mu-integral"),
            ("A3:id:mu=[1,-1,0]:K={}", "mu-dominant"),
            ("A3:id:mu=[0,0,0]:K={}", "mu-noncentral"),
            ("A3:id:mu=[0,1,0]:K={5}", "K-nodes"),
            ("A3:varsigma0:mu=[0,1,0]:K={1}", "K-sigma-stable"),
            ("A3:id:mu=[0,1,0]:K={0,1,2,3}", "K-finite"),
            ("A3:bogus:mu=[0,1,0]:K={}", "sigma-name"),
            ("A3:id:mu=[0,1,0]:K={}:orient=0=long", "orientation-keys"),
            ("A1xA1:id:mu=[1]:K={}", "mu-components"),
            ("A1xA1:id:mu=[1];[1]:K={};{};{}", "K-components"),
            ("D3:id:mu=[1,0,0]:K={}", "component-rank"),
        ],
    )
    def test_semantic_errors(self, text, invariant):
        with pytest.raises(SemanticError) as excinfo:
            parse_datum(text)
        assert excinfo.value.invariant == invariant


class TestRender:
    """render_datum inverts parse_datum on canonical texts."""

    @pytest.mark.parametrize(
        "text",
        [
            "A3:id:mu=[0,1,0]:K={1,2}",
            "C2:Ad(tau2):mu=[0,1]:K={0,2}",
            "A3:rho1*varsigma0:mu=[0,1,0]:K={}",
            "A1xA1:swap:mu=[1];[1]:K={};{}",
            "A2xA2:id:mu=[1,0];[0,1]:K={1};{}",
            "C2:id:mu=[1,0]:K={1}:orient=0=short,2=short",
        ],
    )
    def test_round_trip(self, text):
        assert render_datum(parse_datum(text)) == text


class TestParseOrientation:
    """Tests for the --orientation option format."""

    def test_single_component(self, siegel):
        assert parse_orientation("0=short, 2=long", siegel) == {0: SHORT, 2: LONG}

    def test_product(self, datum):
        d = datum("C2xC2:id:mu=[0,1];[0,1]:K={}")
        assert parse_orientation("1.2=short", d) == {5: SHORT}

    def test_bad_value(self, siegel):
        with pytest.raises(ParseError):
            parse_orientation("0=medium", siegel)

    def test_missing_component(self, siegel):
        with pytest.raises(SemanticError):
            parse_orientation("3.0=long", siegel)
