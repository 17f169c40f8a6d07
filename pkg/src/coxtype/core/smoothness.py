"""Smoothness of closures of Bruhat-Tits strata in Coxeter-type data.

The closure of the stratum of ``w`` is smoothly equivalent to the Schubert
variety ``Q w' sigma_bar(Q) / sigma_bar(Q)`` in the finite reductive group with
Dynkin diagram ``supp_sigma(w)``, where ``w' = w tau^-1``,
``sigma_bar = Ad(tau) o sigma`` and ``Q = supp_sigma(w) & K``. The verdict is
decided by a small set of rules applied per ``sigma_bar``-factor of that
diagram; the partition criterion for type B minuscule Schubert varieties is
exposed on its own.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from coxtype.config import DEFAULT_CONFIG, Config
from coxtype.core.admissible import (
    canonical_order,
    is_coxeter_type_direct,
    is_twisted_coxeter,
    k_adm_0,
    k_cox,
    sigma_support,
    twisted_perm,
)
from coxtype.core.root_data import (
    LONG,
    SHORT,
    CoxeterDatum,
    DiagramAutomorphism,
    Family,
    NodeSet,
    quasi_simple_factors,
)
from coxtype.core.weyl import AffineWeylGroup, WeylElement, group_for
from coxtype.exceptions import DiscrepancyError, PreconditionError, UnsupportedCellError

logger = logging.getLogger(__name__)

Partition = tuple[int, ...]


# -- type B minuscule Schubert varieties ------------------------------------------------


def partition_from_d(d: Sequence[int]) -> Partition:
    """Self-dual partition in the ``n x n`` box attached to ``(d_1 < ... < d_n)``.

    ``d`` picks exactly one of ``i`` and ``2n + 2 - i`` for each ``i <= n``;
    ``a_{n-i+1} = d_i - i`` below ``n + 1`` and ``d_i - i - 1`` above it.

    Raises:
        PreconditionError: If ``d`` is not of that form.
    """
    n = len(d)
    if n == 0:
        raise PreconditionError("d must be nonempty")
    if any(a >= b for a, b in zip(d, d[1:])):
        raise PreconditionError(f"d must be strictly increasing: {tuple(d)}")
    if any(x < 1 or x > 2 * n + 1 or x == n + 1 for x in d):
        raise PreconditionError(f"entries of d must lie in 1..{2 * n + 1} and avoid {n + 1}")
    if any(a + b == 2 * n + 2 for a, b in itertools.combinations(d, 2)):
        raise PreconditionError(f"d contains a pair summing to {2 * n + 2}")

    parts = [0] * n
    for i, x in enumerate(d, start=1):
        parts[n - i] = x - i if x < n + 1 else x - i - 1
    return tuple(parts)


def is_square_or_hook(partition: Sequence[int]) -> bool:
    """Whether the nonzero parts form a ``k x k`` square or a hook."""
    parts = [p for p in partition if p]
    if not parts:
        return True
    if all(p == len(parts) for p in parts):
        return True
    return all(p == 1 for p in parts[1:])


def orbit_closure_rows(n: int) -> list[tuple[int, ...]]:
    """The ``n + 1`` elements ``d`` whose Schubert varieties are ``Q``-orbit closures."""
    return [
        tuple(range(i, n + 1)) + tuple(range(2 * n + 3 - i, 2 * n + 2)) for i in range(1, n + 2)
    ]


# -- the Schubert variety of a stratum -------------------------------------------------------


@dataclass(frozen=True)
class SchubertCase:
    """Finite data of the Schubert variety attached to one stratum."""

    support: NodeSet
    q_set: NodeSet
    sigma_bar: DiagramAutomorphism
    w_prime: tuple[int, ...]
    length: int

    def factors(self, group: AffineWeylGroup) -> list[NodeSet]:
        """Connected components of the support, merged along ``sigma_bar``."""
        comps = group.rd.connected_components(self.support)
        merged: list[set[int]] = []
        for comp in comps:
            block = set(self.sigma_bar.closure(comp))
            for other in [m for m in merged if m & block]:
                block |= other
                merged.remove(other)
            merged.append(block)
        return sorted((frozenset(m) for m in merged), key=min)

    def restrict(self, factor: NodeSet) -> tuple[int, ...]:
        return tuple(s for s in self.w_prime if s in factor)


def schubert_case(w: WeylElement, datum: CoxeterDatum) -> SchubertCase:
    group = group_for(datum.affine_type)
    letters, omega = group.reduced_word(w)
    support = sigma_support(w, datum)
    return SchubertCase(
        support=support,
        q_set=support & datum.K,
        sigma_bar=twisted_perm(datum, omega),
        w_prime=letters,
        length=len(letters),
    )


def _ascend(group: AffineWeylGroup, x: WeylElement, left: NodeSet, right: NodeSet) -> WeylElement:
    """Maximal element of ``W_left x W_right``."""
    while True:
        s = next((t for t in sorted(left) if not group.is_left_descent(x, t)), None)
        if s is not None:
            x = group.multiply(group.generators[s], x)
            continue
        t = next((r for r in sorted(right) if not group.is_right_descent(x, r)), None)
        if t is None:
            return x
        x = group.multiply(x, group.generators[t])


def verify_closure_dimension(w: WeylElement, datum: CoxeterDatum) -> None:
    """Check ``l(max(W_Q w' W_sigma_bar(Q))) - l(w_{Q,0}) == l(w)``.

    Raises:
        DiscrepancyError: If the stratum closure is not the orbit closure.
    """
    group = group_for(datum.affine_type)
    case = schubert_case(w, datum)
    w_prime = group.from_word(case.w_prime)
    top = _ascend(group, w_prime, case.q_set, case.sigma_bar.image(case.q_set))
    longest_q = _ascend(group, group.identity, case.q_set, frozenset())
    expected = group.length(top) - group.length(longest_q)
    if expected != group.length(w):
        raise DiscrepancyError(
            f"closure dimension {expected} differs from l(w) = {group.length(w)} "
            f"for word {case.w_prime}"
        )


# -- rules -------------------------------------------------------------------------------------


class Rule(str, Enum):
    """Terminal rules of the smoothness decision."""

    DIMENSION = "R1"
    CLOSED_ORBIT = "R3"
    FULL_FLAG_COXETER = "R4"
    GRASSMANNIAN = "R5"
    END_NODE = "R6"


RULE_TEXT = {
    Rule.DIMENSION: "dimension at most one",
    Rule.CLOSED_ORBIT: "w' lies in W(sigma_bar(Q)), closed orbit with empty boundary",
    Rule.FULL_FLAG_COXETER: "Coxeter element in a full flag variety",
    Rule.GRASSMANNIAN: "type A Grassmannian, singular iff s_e s_{e+1} s_{e-1} <= w",
    Rule.END_NODE: "double-bond end node outside K, smooth iff short or length <= 1",
}


@dataclass(frozen=True)
class RuleApplication:
    rule: Rule
    factor: NodeSet
    smooth: bool


@dataclass(frozen=True)
class StratumSmoothness:
    w: WeylElement
    smooth: bool
    trace: tuple[RuleApplication, ...]


def _grassmannian_node(datum: CoxeterDatum) -> Optional[int]:
    """The node outside K for ``(A_{n-1}, id, omega_1 + omega_{n-1}, S~ - {e})``, else None."""
    rd = datum.root_data
    if rd.component_count != 1:
        return None
    ctype = rd.component_type(0)
    r = ctype.rank
    if ctype.family is not Family.A or r < 2 or not datum.sigma.is_identity:
        return None
    if datum.mu.as_ints() != (1,) + (0,) * (r - 2) + (1,):
        return None
    outside = set(rd.nodes) - datum.K
    return outside.pop() if len(outside) == 1 else None


def _grassmannian_pattern(e: int, r: int) -> tuple[int, int, int]:
    n = r + 1
    return (e, (e + 1) % n, (e - 1) % n)


def _factor_rule(
    case: SchubertCase,
    factor: NodeSet,
    w: WeylElement,
    datum: CoxeterDatum,
    orientation: dict[int, str],
) -> RuleApplication:
    group = group_for(datum.affine_type)
    rd = datum.root_data
    word = case.restrict(factor)
    q_factor = case.q_set & factor

    if set(word) <= case.sigma_bar.image(q_factor):
        return RuleApplication(Rule.CLOSED_ORBIT, factor, True)
    if not q_factor:
        return RuleApplication(Rule.FULL_FLAG_COXETER, factor, True)

    e = _grassmannian_node(datum)
    if e is not None:
        pattern = group.from_word(
            _grassmannian_pattern(e, rd.component_type(0).rank), group.kottwitz(w)
        )
        return RuleApplication(Rule.GRASSMANNIAN, factor, not group.bruhat_leq(pattern, w))

    outside = factor - datum.K
    if len(outside) == 1:
        (end,) = outside
        for bond in rd.double_bonds():
            if end in bond and set(bond) <= factor:
                short = rd.longer_node(bond, orientation) != end
                return RuleApplication(Rule.END_NODE, factor, short or len(word) <= 1)

    raise DiscrepancyError(
        f"no smoothness rule applies to factor {sorted(factor)} of word {case.w_prime}"
    )


def _require_coxeter_type(datum: CoxeterDatum, config: Config) -> None:
    if not is_coxeter_type_direct(datum, config):
        raise UnsupportedCellError("smoothness is only decided for data of Coxeter type")


def stratum_smoothness(
    w: WeylElement, datum: CoxeterDatum, config: Config = DEFAULT_CONFIG
) -> StratumSmoothness:
    """Smooth/singular verdict for the closure of the stratum of ``w``, with its rule trace.

    Raises:
        UnsupportedCellError: If the datum is not of Coxeter type.
        PreconditionError: If ``w`` is not in ``^K Cox(mu)``.
        DiscrepancyError: If no rule decides a factor or the closure check fails.
    """
    _require_coxeter_type(datum, config)
    if w not in k_adm_0(datum, config) or not is_twisted_coxeter(w, datum):
        raise PreconditionError("stratum_smoothness needs an element of ^K Cox(mu)")
    return _decide(w, datum, config)


def _decide(w: WeylElement, datum: CoxeterDatum, config: Config) -> StratumSmoothness:
    group = group_for(datum.affine_type)
    case = schubert_case(w, datum)
    if config.verify_closures:
        verify_closure_dimension(w, datum)

    if case.length <= 1:
        trace = (RuleApplication(Rule.DIMENSION, case.support, True),)
        return StratumSmoothness(w, True, trace)

    orientation = datum.orientation_map()
    trace = tuple(
        _factor_rule(case, factor, w, datum, orientation) for factor in case.factors(group)
    )
    return StratumSmoothness(w, all(step.smooth for step in trace), trace)


# -- cells ------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class CellSmoothness:
    """Verdicts for every stratum of a datum under one orientation."""

    datum: CoxeterDatum
    orientation: dict[int, str]
    strata: tuple[StratumSmoothness, ...]

    @property
    def all_smooth(self) -> bool:
        return all(s.smooth for s in self.strata)


def orientations(datum: CoxeterDatum) -> list[dict[int, str]]:
    """The given orientation, or every long/short assignment of the orientation keys."""
    if datum.orientation is not None:
        return [datum.orientation_map()]
    keys = datum.root_data.orientation_keys()
    return [
        dict(zip(keys, choice)) for choice in itertools.product((LONG, SHORT), repeat=len(keys))
    ]


def cell_smoothness(
    datum: CoxeterDatum,
    orientation: Optional[dict[int, str]] = None,
    config: Config = DEFAULT_CONFIG,
) -> list[CellSmoothness]:
    """Evaluate every stratum of ``^K Cox(mu)``, once per orientation.

    Raises:
        UnsupportedCellError: If the datum is not of Coxeter type.
    """
    _require_coxeter_type(datum, config)
    if orientation is not None:
        datum = datum.with_orientation(orientation)
    group = group_for(datum.affine_type)
    elements = canonical_order(group, k_cox(datum, config))

    cells = []
    for orient in orientations(datum):
        oriented = datum.with_orientation(orient)
        strata = tuple(_decide(w, oriented, config) for w in elements)
        logger.debug(
            "%s orientation %s: %d singular strata",
            datum.affine_type.label,
            orient,
            sum(not s.smooth for s in strata),
        )
        cells.append(CellSmoothness(oriented, oriented.orientation_map(), strata))
    return cells


def predicted_singular(datum: CoxeterDatum, orientation: Optional[dict[int, str]] = None) -> bool:
    """Closed statement: whether some stratum closure of the datum is singular.

    True for the type A case with ``mu = omega_1 + omega_{n-1}`` and ``n >= 4``, and
    whenever ``dim X(mu, tau)_K >= 2`` while the longer node of some double bond is
    outside K.
    """
    from coxtype.core.classifier import rank_ss_J_tau

    if orientation is not None:
        datum = datum.with_orientation(orientation)
    for factor in quasi_simple_factors(datum):
        if _grassmannian_node(factor) is not None and factor.rank >= 3:
            return True
        long_nodes = factor.root_data.long_side_nodes(factor.orientation_map())
        if rank_ss_J_tau(factor) >= 2 and long_nodes - factor.K:
            return True
    return False
