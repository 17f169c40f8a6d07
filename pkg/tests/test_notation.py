"""Tests for word formatting."""

import pytest

from coxtype.core.root_data import AffineType, root_data_for
from coxtype.core.weyl import group_for
from coxtype.utils.notation import format_element, format_letters, format_word, is_trivial_omega


def rd(label: str):
    return root_data_for(AffineType.from_label(label))


class TestFormatLetters:
    """Tests for contracted words."""

    @pytest.mark.parametrize(
        "letters, text",
        [
            ((), "1"),
            ((1,), "s1"),
            ((3, 2), "s3 s2"),
            ((3, 2, 1), "s[3,1]"),
            ((1, 2, 3), "s[3,1]^-1"),
            ((0, 3, 2, 1), "s0 s[3,1]"),
            ((3, 2, 0), "s3 s2 s0"),
        ],
    )
    def test_single_component(self, letters, text):
        assert format_letters(letters, rd("A3")) == text

    def test_primes_on_second_component(self):
        assert format_letters((0, 3, 4), rd("A2xA2")) == "s0 s0' s1'"


class TestFormatWord:
    """Tests for words with an Omega part."""

    def test_trivial_omega(self):
        assert format_word((0, 1), "1", rd("A3")) == "s0 s1"

    def test_omega_only(self):
        assert format_word((), "tau2", rd("A3")) == "tau2"

    def test_both(self):
        assert format_word((1, 2), "tau2", rd("C2")) == "s1 s2 . tau2"

    def test_product_omega(self):
        assert is_trivial_omega("1,1")
        assert not is_trivial_omega("1,tau1")

    def test_element(self):
        group = group_for(AffineType.from_label("A3"))
        assert format_element(group, group.identity) == "1"
        assert format_element(group, group.from_word([0], group.tau(2))) == "s0 . tau2"
