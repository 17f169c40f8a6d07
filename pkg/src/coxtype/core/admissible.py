"""The mu-admissible set and its refinements by K, sigma-support and Coxeter elements."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from functools import lru_cache

from coxtype.config import DEFAULT_CONFIG, Config
from coxtype.core.root_data import AffineType, CoxeterDatum, DiagramAutomorphism, NodeSet
from coxtype.core.weyl import AffineWeylGroup, TwistedAction, WeylElement, action_for, group_for
from coxtype.exceptions import BudgetExceededError

logger = logging.getLogger(__name__)

ElementSet = frozenset[WeylElement]


def sort_key(group: AffineWeylGroup, w: WeylElement) -> tuple:
    """Canonical order of elements: by length, then reduced word, then Omega label."""
    letters, omega = group.reduced_word(w)
    return (len(letters), letters, group.omega_label(omega))


def canonical_order(group: AffineWeylGroup, elements: Iterable[WeylElement]) -> list[WeylElement]:
    return sorted(elements, key=lambda w: sort_key(group, w))


def basic_element(datum: CoxeterDatum) -> WeylElement:
    """The length-zero ``tau`` with ``t^mu`` in ``W_a tau``."""
    group = group_for(datum.affine_type)
    return group.kottwitz(group.translation(datum.mu.as_ints()))


def twisted_perm(datum: CoxeterDatum, omega: WeylElement) -> DiagramAutomorphism:
    """``Ad(omega) o sigma`` on nodes."""
    return action_for(datum.affine_type, datum.sigma).orbit_action(omega)


def lower_interval(group: AffineWeylGroup, y: WeylElement, memo: dict) -> ElementSet:
    """``{x : x <= y}``, using ``[1, y] = L u sL`` with ``L = [1, sy]`` for a descent s."""
    cached = memo.get(y)
    if cached is not None:
        return cached
    descents = group.left_descents(y)
    if not descents:
        result: ElementSet = frozenset({y})
    else:
        s = group.generators[descents[0]]
        below = lower_interval(group, group.multiply(s, y), memo)
        result = below | frozenset(group.multiply(s, x) for x in below)
    memo[y] = result
    return result


@lru_cache(maxsize=256)
def _adm(affine_type: AffineType, mu: tuple[int, ...]) -> ElementSet:
    group = group_for(affine_type)
    memo: dict = {}
    elements: set[WeylElement] = set()
    orbit = group.finite_orbit(mu)
    for coweight in orbit:
        elements |= lower_interval(group, group.translation(coweight), memo)
    logger.debug(
        "Adm(%s) in %s: %d translations, %d elements",
        mu,
        affine_type.label,
        len(orbit),
        len(elements),
    )
    return frozenset(elements)


def adm(datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> ElementSet:
    """``Adm(mu)``: elements below some ``t^{x(mu)}`` in Bruhat order.

    Raises:
        BudgetExceededError: If ``<mu, 2 rho>`` exceeds ``config.adm_budget``.
    """
    if datum.lhs > config.adm_budget:
        raise BudgetExceededError(
            f"<mu, 2rho> = {datum.lhs} exceeds the admissible-set budget {config.adm_budget}"
        )
    return _adm(datum.affine_type, datum.mu.as_ints())


def k_adm(datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> ElementSet:
    """``^K Adm(mu)``."""
    group = group_for(datum.affine_type)
    return frozenset(w for w in adm(datum, config) if group.is_in_KW(w, datum.K))


def sigma_support(w: WeylElement, datum: CoxeterDatum) -> NodeSet:
    """Letters of ``w omega^-1`` closed under ``Ad(omega) o sigma``, ``omega`` the Kottwitz part."""
    group = group_for(datum.affine_type)
    letters, omega = group.reduced_word(w)
    return twisted_perm(datum, omega).closure(letters)


def is_twisted_coxeter(w: WeylElement, datum: CoxeterDatum) -> bool:
    """Whether a reduced word of ``w omega^-1`` meets each ``Ad(omega) o sigma``-orbit at most once."""
    group = group_for(datum.affine_type)
    letters, omega = group.reduced_word(w)
    perm = twisted_perm(datum, omega)
    orbits = [perm.orbit_of(s) for s in letters]
    return len(set(orbits)) == len(orbits)


@lru_cache(maxsize=512)
def k_adm_0(datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> ElementSet:
    """Elements of ``^K Adm(mu)`` with finite ``W_{supp_sigma(w)}``."""
    rd = datum.root_data
    return frozenset(
        w for w in k_adm(datum, config) if rd.is_finite_type(sigma_support(w, datum))
    )


def k_cox(datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> ElementSet:
    """``^K Cox(mu)``: the twisted Coxeter elements of ``^K Adm(mu)_0``."""
    return frozenset(w for w in k_adm_0(datum, config) if is_twisted_coxeter(w, datum))


def direct_equality(datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> bool:
    """``^K Cox(mu) == ^K Adm(mu)_0``."""
    return k_cox(datum, config) == k_adm_0(datum, config)


def is_coxeter_type_direct(datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> bool:
    """Direct set equality combined with the inequality test of the classifier."""
    from coxtype.core.classifier import check_condition_3

    return direct_equality(datum, config) and check_condition_3(datum).passed


def twisted_action(datum: CoxeterDatum) -> TwistedAction:
    return action_for(datum.affine_type, datum.sigma)
