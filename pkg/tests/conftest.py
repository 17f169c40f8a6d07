"""Pytest configuration and fixtures for coxtype tests."""

from collections.abc import Callable

import pytest

from coxtype.config import Config
from coxtype.core.parser import parse_datum
from coxtype.core.root_data import CoxeterDatum
from coxtype.core.tables import golden_rows

GOLDEN_MAX_RANK = 4


def pytest_generate_tests(metafunc: pytest.Metafunc) -> None:
    """Parametrize ``golden_cell`` over the golden table rows up to rank 4."""
    if "golden_cell" in metafunc.fixturenames:
        metafunc.parametrize("golden_cell", [row.datum for row in golden_rows(GOLDEN_MAX_RANK)])


@pytest.fixture
def datum() -> Callable[[str], CoxeterDatum]:
    """Parse a datum from its grammar text."""
    return parse_datum


@pytest.fixture
def harris_taylor() -> CoxeterDatum:
    """(A3, id, omega_1, {}): a single point stratum."""
    return parse_datum("A3:id:mu=[1,0,0]:K={}")


@pytest.fixture
def drinfeld() -> CoxeterDatum:
    """(A3, rho_3, omega_1, {}): dimension three."""
    return parse_datum("A3:rho3:mu=[1,0,0]:K={}")


@pytest.fixture
def a1_double() -> CoxeterDatum:
    """(A1, id, 2 omega_1, {})."""
    return parse_datum("A1:id:mu=[2]:K={}")


@pytest.fixture
def a3_omega2() -> CoxeterDatum:
    """(A3, id, omega_2, {1, 2})."""
    return parse_datum("A3:id:mu=[0,1,0]:K={1,2}")


@pytest.fixture
def siegel() -> CoxeterDatum:
    """(C2, id, omega_2, {0})."""
    return parse_datum("C2:id:mu=[0,1]:K={0}")


@pytest.fixture
def siegel_twisted() -> CoxeterDatum:
    """(C2, Ad(tau_2), omega_2, {0, 2})."""
    return parse_datum("C2:Ad(tau2):mu=[0,1]:K={0,2}")


@pytest.fixture
def siegel_rejected() -> CoxeterDatum:
    """(C2, Ad(tau_2), omega_2, {1}): valid, but not of Coxeter type."""
    return parse_datum("C2:Ad(tau2):mu=[0,1]:K={1}")


@pytest.fixture
def small_config() -> Config:
    """Configuration with the closure check enabled and tight budgets."""
    return Config(adm_budget=12, coset_budget=5_000, search_cap=20_000, recursion_budget=20_000)
