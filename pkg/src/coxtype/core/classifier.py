"""Admissible triples, the inequality ledger and the classification sweep.

The inequality test runs in three stages:

* (c) ``<mu, 2rho> <= 2 * rank``;
* (b) ``<mu, 2rho> <= rank_ss(G) + rank_ss(J_tau)``;
* (a) for every admissible triple ``(xi, J, K')`` with ``K <= K'``,
  ``<mu, 2rho> <= #sigma-orbits(K'_xi) + rank_ss(J_tau)``.

Stage (a) depends on K only through the condition ``K <= K'``, so the failing
triples are computed once per ``(type, sigma, mu)`` and reused for every K.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from coxtype.config import DEFAULT_CONFIG, Config
from coxtype.core.linalg import solve
from coxtype.core.root_data import (
    AffineType,
    ComponentType,
    Coweight,
    CoxeterDatum,
    DiagramAutomorphism,
    Family,
    NodeSet,
    RootData,
    catalog_names,
    describe_automorphism,
    quasi_simple_factors,
    root_data_for,
)
from coxtype.core.weyl import TwistedAction, WeylElement, action_for, group_for
from coxtype.exceptions import BudgetExceededError, InternalError, PreconditionError

logger = logging.getLogger(__name__)


class Inequality(str, Enum):
    """The inequality that rejected a datum."""

    TRIPLE = "a"
    RANKS = "b"
    BOUND = "c"


@dataclass(frozen=True)
class AdmissibleTriple:
    """An admissible triple together with its averaged projection and ``K_xi``."""

    xi: tuple[int, ...]
    J: NodeSet
    K: NodeSet
    xi_J_average: tuple[Fraction, ...]
    K_xi: NodeSet

    def sort_key(self) -> tuple:
        return (sorted(self.J), sorted(self.K), self.xi)


@dataclass(frozen=True)
class ConditionResult:
    """Outcome of the inequality test for one datum."""

    passed: bool
    lhs: int
    rank_ss_G: int
    rank_ss_J: int
    failed: Optional[Inequality] = None
    witness: Optional[AdmissibleTriple] = None
    factor: Optional[int] = None


# -- linear algebra on coroot spans -------------------------------------------------


def xi_J(xi: Sequence[int | Fraction], J: NodeSet, rd: RootData) -> tuple[Fraction, ...]:
    """The vector of ``R Phi_J^vee`` pairing with ``Phi_J`` like ``xi`` does."""
    nodes = sorted(J)
    if not nodes:
        return (Fraction(0),) * rd.rank
    matrix = [[rd.affine_cartan(t, s) for t in nodes] for s in nodes]
    rhs = [sum(a * b for a, b in zip(xi, rd.alpha(s))) for s in nodes]
    coefficients = solve(matrix, rhs)
    out = [Fraction(0)] * rd.rank
    for x, t in zip(coefficients, nodes):
        for i, c in enumerate(rd.coroot(t)):
            out[i] += x * c
    return tuple(out)


def in_coroot_span(v: Sequence[int | Fraction], K: NodeSet, rd: RootData) -> bool:
    """Whether ``v`` lies in ``R Phi_K^vee``."""
    return tuple(Fraction(x) for x in v) == xi_J(v, K, rd)


def sigma_average(v: Sequence[int | Fraction], action: TwistedAction) -> tuple[Fraction, ...]:
    """The ``p(sigma)``-average of ``v``."""
    return action.average(v)


def k_xi(average: Sequence[Fraction], K: NodeSet, sigma: DiagramAutomorphism, rd: RootData) -> NodeSet:
    """Sigma-saturation of the components of K on which ``average`` is nonzero."""
    chosen: set[int] = set()
    for component in rd.connected_components(K):
        if any(sum(a * b for a, b in zip(average, rd.alpha(s))) != 0 for s in component):
            chosen |= component
    return sigma.closure(chosen)


# -- ranks --------------------------------------------------------------------------------


def rank_ss_G(datum: CoxeterDatum) -> int:
    """``#sigma-orbits on S~ - 1``."""
    return len(datum.sigma.orbits()) - 1


def rank_ss_J_tau(datum: CoxeterDatum) -> int:
    """``#(Ad(tau) o sigma)-orbits on S~ - 1`` for a quasi-simple datum.

    Raises:
        PreconditionError: If sigma does not permute the components transitively.
    """
    if not datum.is_quasi_simple:
        raise PreconditionError("rank_ss(J_tau) needs a quasi-simple datum")
    from coxtype.core.admissible import basic_element, twisted_perm

    return len(twisted_perm(datum, basic_element(datum)).orbits()) - 1


def total_rank_ss_J(datum: CoxeterDatum) -> int:
    """Sum of ``rank_ss(J_tau)`` over the quasi-simple factors."""
    return sum(rank_ss_J_tau(factor) for factor in quasi_simple_factors(datum))


# -- subsets ----------------------------------------------------------------------------


def stable_subsets(sigma: DiagramAutomorphism, nodes: NodeSet) -> Iterator[NodeSet]:
    """All sigma-stable subsets of a sigma-stable set, smallest first."""
    orbits = sigma.orbits(nodes)
    for size in range(len(orbits) + 1):
        for combo in itertools.combinations(orbits, size):
            yield frozenset().union(*combo)


def maximal_stable_subsets(sigma: DiagramAutomorphism, nodes: NodeSet) -> list[NodeSet]:
    """Complements of single sigma-orbits inside ``nodes``."""
    return [nodes - orbit for orbit in sigma.orbits(nodes)]


# -- triple analysis ---------------------------------------------------------------------


@dataclass(frozen=True)
class TripleAnalysis:
    """Failing admissible triples of a ``(type, sigma, mu)`` cell, for every K."""

    lhs: int
    rank_ss_G: int
    rank_ss_J: int
    bound: int
    bad: tuple[AdmissibleTriple, ...]

    @property
    def prefilter(self) -> Optional[Inequality]:
        if self.lhs > 2 * self.bound:
            return Inequality.BOUND
        if self.lhs > self.rank_ss_G + self.rank_ss_J:
            return Inequality.RANKS
        return None

    def failing(self, K: NodeSet) -> list[AdmissibleTriple]:
        return [t for t in self.bad if K <= t.K]

    def passes(self, K: NodeSet) -> bool:
        return self.prefilter is None and not any(K <= t.K for t in self.bad)


def _is_dominant_on(xi: Sequence[int], K: NodeSet, rd: RootData) -> bool:
    return all(sum(a * b for a, b in zip(xi, rd.alpha(s))) >= 0 for s in K)


@lru_cache(maxsize=1024)
def triple_analysis(affine_type: AffineType, sigma: DiagramAutomorphism, mu: tuple[int, ...]) -> TripleAnalysis:
    """Run inequalities (c), (b) and collect every failing triple of (a)."""
    bare = CoxeterDatum(affine_type, sigma, Coweight.of(mu), frozenset())
    rd = bare.root_data
    lhs, rank_G, rank_J = bare.lhs, rank_ss_G(bare), rank_ss_J_tau(bare)
    analysis = TripleAnalysis(lhs, rank_G, rank_J, rd.rank, ())
    # K_xi may be empty, so no triple can fail once lhs <= rank_ss(J_tau)
    if analysis.prefilter is not None or lhs <= rank_J:
        return analysis

    group = group_for(affine_type)
    action = action_for(affine_type, sigma)
    orbit = sorted(group.finite_orbit(mu))
    bad: list[AdmissibleTriple] = []
    everything = frozenset(rd.nodes)
    for J in maximal_stable_subsets(sigma, everything):
        projections = {xi: sigma_average(xi_J(xi, J, rd), action) for xi in orbit}
        for K in stable_subsets(sigma, J):
            for xi in orbit:
                average = projections[xi]
                if not _is_dominant_on(xi, K, rd) or not in_coroot_span(average, K, rd):
                    continue
                small = k_xi(average, K, sigma, rd)
                if lhs > len(sigma.orbits(small)) + rank_J:
                    bad.append(AdmissibleTriple(xi, J, K, average, small))
    bad.sort(key=AdmissibleTriple.sort_key)
    logger.debug(
        "triples for %s sigma=%s mu=%s: %d failing", affine_type.label, sigma.perm, mu, len(bad)
    )
    return replace(analysis, bad=tuple(bad))


def _analysis_for(datum: CoxeterDatum) -> TripleAnalysis:
    return triple_analysis(
        datum.affine_type, DiagramAutomorphism(datum.sigma.perm), datum.mu.as_ints()
    )


def check_condition_3(datum: CoxeterDatum) -> ConditionResult:
    """Evaluate the inequality ledger; products are checked factor by factor."""
    if not datum.is_quasi_simple:
        totals = [0, 0, 0]
        for index, factor in enumerate(quasi_simple_factors(datum)):
            result = check_condition_3(factor)
            if not result.passed:
                return replace(result, factor=index)
            totals = [totals[0] + result.lhs, totals[1] + result.rank_ss_G, totals[2] + result.rank_ss_J]
        return ConditionResult(True, *totals)

    analysis = _analysis_for(datum)
    base = ConditionResult(True, analysis.lhs, analysis.rank_ss_G, analysis.rank_ss_J)
    if analysis.prefilter is not None:
        return replace(base, passed=False, failed=analysis.prefilter)
    failing = analysis.failing(datum.K)
    if failing:
        return replace(base, passed=False, failed=Inequality.TRIPLE, witness=failing[0])
    return base


def failing_triples(datum: CoxeterDatum) -> list[AdmissibleTriple]:
    """Every failing admissible triple ``(xi, J, K')`` with ``K <= K'``."""
    if not datum.is_quasi_simple:
        raise PreconditionError("failing_triples needs a quasi-simple datum")
    return _analysis_for(datum).failing(datum.K)


# -- witnesses ------------------------------------------------------------------------------


def _twisted_average_vanishes(
    c: WeylElement, vector: Sequence[Fraction], action: TwistedAction, cap: int
) -> bool:
    """Whether the ``p(c sigma)``-average of ``vector`` is zero."""
    group = action.group
    start = tuple(Fraction(x) for x in vector)
    total = list(start)
    current = group.act(c.finite_inv, action.linear(start))
    steps = 1
    while current != start:
        total = [a + b for a, b in zip(total, current)]
        current = group.act(c.finite_inv, action.linear(current))
        steps += 1
        if steps > cap:
            raise InternalError("p(c sigma) orbit did not close")
    return not any(total)


def find_coxeter_witness(
    triple: AdmissibleTriple, datum: CoxeterDatum, config: Config = DEFAULT_CONFIG
) -> WeylElement:
    """A sigma-Coxeter ``c`` in ``W_{K_xi}`` with ``l(t^xi c) = l(t^xi) - l(c)``.

    The letters are chosen one sigma-orbit at a time as right descents of the
    running product; the search backtracks until the product also lies in
    ``^K W~``, sits below ``t^xi`` and has vanishing ``p(c sigma)``-average of
    ``xi_J``.

    Raises:
        InternalError: If no such element exists.
    """
    group = group_for(datum.affine_type)
    action = action_for(datum.affine_type, datum.sigma)
    rd = datum.root_data
    top = group.translation(triple.xi)
    projection = xi_J(triple.xi, triple.J, rd)
    orbits = datum.sigma.orbits(triple.K_xi)
    target = group.length(top) - len(orbits)

    def accept(element: WeylElement, c: WeylElement) -> bool:
        return (
            group.length(element) == target
            and group.is_in_KW(element, triple.K)
            and group.bruhat_leq(element, top)
            and _twisted_average_vanishes(c, projection, action, config.newton_cap)
        )

    def search(element: WeylElement, c: WeylElement, remaining: tuple) -> Optional[WeylElement]:
        if not remaining:
            return c if accept(element, c) else None
        for orbit in remaining:
            rest = tuple(o for o in remaining if o != orbit)
            for s in sorted(orbit):
                if not group.is_right_descent(element, s):
                    continue
                found = search(
                    group.multiply(element, group.generators[s]),
                    group.multiply(c, group.generators[s]),
                    rest,
                )
                if found is not None:
                    return found
        return None

    witness = search(top, group.identity, tuple(orbits))
    if witness is None:
        raise InternalError(f"no Coxeter witness for the triple xi={triple.xi}")
    return witness


# -- isomorphism reduction ----------------------------------------------------------------


def conjugate_datum(datum: CoxeterDatum, phi: DiagramAutomorphism) -> CoxeterDatum:
    """Transport a datum along an affine diagram automorphism."""
    group = group_for(datum.affine_type)
    moved_mu = group.dominant(action_for(datum.affine_type, phi).linear(datum.mu.as_ints()))
    orientation = None
    if datum.orientation is not None:
        orientation = tuple(sorted((phi(s), v) for s, v in datum.orientation))
    return CoxeterDatum(
        affine_type=datum.affine_type,
        sigma=DiagramAutomorphism(datum.sigma.conjugate_by(phi).perm),
        mu=Coweight.of(moved_mu),
        K=phi.image(datum.K),
        orientation=orientation,
    )


def _form_key(datum: CoxeterDatum) -> tuple:
    return (datum.sigma.perm, datum.mu.as_ints(), tuple(sorted(datum.K)))


def canonical_form(datum: CoxeterDatum) -> tuple:
    """Least ``(sigma, mu, K)`` over all affine diagram automorphisms."""
    return (datum.affine_type.label,) + min(
        _form_key(conjugate_datum(datum, phi)) for phi in datum.root_data.automorphisms
    )


def preferred_form(datum: CoxeterDatum) -> CoxeterDatum:
    """Isomorphic datum whose sigma has the shortest catalogued name, then least K."""
    names = {name: rank for rank, name in enumerate(catalog_names(datum.affine_type))}
    best: Optional[tuple] = None
    chosen = datum
    for phi in datum.root_data.automorphisms:
        candidate = conjugate_datum(datum, phi)
        named = describe_automorphism(candidate.sigma.perm, datum.affine_type)
        key = (names.get(named.name, len(names)),) + _form_key(candidate)[::-1]
        if best is None or key < best:
            best = key
            chosen = replace(candidate, sigma=named)
    return chosen


# -- sweep ---------------------------------------------------------------------------------------


def sweep_types(max_rank: int) -> list[AffineType]:
    """Irreducible affine types of rank at most ``max_rank`` and their swapped squares."""
    singles: list[ComponentType] = []
    for family in Family:
        for rank in range(1, max_rank + 1):
            if family is Family.B and rank == 2:
                continue
            if family.admits_rank(rank):
                singles.append(ComponentType(family, rank))
    types = [AffineType((c,)) for c in singles]
    types += [AffineType((c, c)) for c in singles if 2 * c.rank <= max_rank]
    return types


def mu_candidates(rd: RootData) -> list[tuple[int, ...]]:
    """Dominant coweights, nonzero on every component, with ``<mu, 2rho> <= 2 * rank``."""
    bound = 2 * rd.rank
    per_component: list[list[tuple[int, ...]]] = []
    for j in range(rd.component_count):
        weights = [rd.two_rho[x] for x in rd.component_coords(j)]
        options: list[tuple[int, ...]] = []

        def extend(prefix: tuple[int, ...], budget: int) -> None:
            if len(prefix) == len(weights):
                if any(prefix):
                    options.append(prefix)
                return
            weight = weights[len(prefix)]
            for c in range(budget // weight + 1):
                extend(prefix + (c,), budget - c * weight)

        extend((), bound)
        per_component.append(options)

    out = []
    for combo in itertools.product(*per_component):
        mu = tuple(x for part in combo for x in part)
        if rd.pairing(mu) <= bound:
            out.append(mu)
    return sorted(out)


def _transitive(rd: RootData, sigma: DiagramAutomorphism) -> bool:
    reached = {0}
    frontier = [0]
    while frontier:
        j = frontier.pop()
        for s in rd.component_nodes(j):
            k = rd.node_component[sigma(s)]
            if k not in reached:
                reached.add(k)
                frontier.append(k)
    return len(reached) == rd.component_count


def _cell_key(rd: RootData, sigma: DiagramAutomorphism, mu: tuple[int, ...]) -> tuple:
    group = group_for(rd.affine_type)
    keys = []
    for phi in rd.automorphisms:
        moved = group.dominant(action_for(rd.affine_type, phi).linear(mu))
        keys.append((sigma.conjugate_by(phi).perm, tuple(moved)))
    return min(keys)


def sweep_type(affine_type: AffineType, config: Config = DEFAULT_CONFIG) -> list[CoxeterDatum]:
    """Minimal Coxeter-type data of one affine type, one per isomorphism class."""
    from coxtype.core.admissible import direct_equality

    rd = root_data_for(affine_type)
    seen_cells: set[tuple] = set()
    found: dict[tuple, CoxeterDatum] = {}
    candidates = mu_candidates(rd)
    everything = frozenset(rd.nodes)
    for sigma in rd.automorphisms:
        if not _transitive(rd, sigma):
            continue
        for mu in candidates:
            key = _cell_key(rd, sigma, mu)
            if key in seen_cells:
                continue
            seen_cells.add(key)
            analysis = triple_analysis(affine_type, sigma, mu)
            if analysis.prefilter is not None:
                continue
            for K in stable_subsets(sigma, everything):
                if not rd.is_finite_type(K) or not analysis.passes(K):
                    continue
                if any(analysis.passes(smaller) for smaller in maximal_stable_subsets(sigma, K)):
                    continue
                datum = CoxeterDatum(
                    affine_type, describe_automorphism(sigma.perm, affine_type), Coweight.of(mu), K
                )
                if not direct_equality(datum, config):
                    logger.warning(
                        "%s passes the inequalities but Cox != Adm_0; excluded",
                        format_datum_key(datum),
                    )
                    continue
                form = canonical_form(datum)
                if form not in found:
                    found[form] = preferred_form(datum)
                    logger.debug("minimal datum %s", format_datum_key(found[form]))
    return [found[k] for k in sorted(found)]


def format_datum_key(datum: CoxeterDatum) -> str:
    return f"{datum.affine_type.label}:{datum.sigma}:mu={datum.mu.as_ints()}:K={sorted(datum.K)}"


def classify_sweep(max_rank: int, config: Config = DEFAULT_CONFIG) -> list[CoxeterDatum]:
    """All minimal irreducible data of Coxeter type up to ``max_rank``.

    Raises:
        BudgetExceededError: If ``max_rank`` exceeds ``config.max_rank``.
    """
    if max_rank > config.max_rank:
        raise BudgetExceededError(
            f"max rank {max_rank} exceeds the configured bound {config.max_rank}"
        )
    types = sweep_types(max_rank)
    logger.info("Sweeping %d affine types up to rank %d", len(types), max_rank)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            batches = list(pool.map(sweep_type, types, itertools.repeat(config)))
    else:
        batches = [sweep_type(t, config) for t in types]
    return [datum for batch in batches for datum in batch]
