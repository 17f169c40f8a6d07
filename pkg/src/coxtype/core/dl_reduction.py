"""Deligne-Lusztig reduction for ``X_w(tau)`` with ``tau`` basic.

For an element x the reduction explores the class of x under length-preserving
moves ``x -> s x sigma(s)``. If some member y of that class admits a drop
``l(s y sigma(s)) = l(y) - 2``, then

    dim X_x(tau) = 1 + max(dim X_{s y sigma(s)}(tau), dim X_{s y}(tau)),

where an empty branch is ignored. Otherwise x has minimal length in its
sigma-conjugacy class and X_x(tau) is nonempty exactly when x lies in the
Omega-coset of tau and has central Newton point, with dimension l(x).
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from coxtype.config import DEFAULT_CONFIG, Config
from coxtype.core.admissible import (
    basic_element,
    canonical_order,
    is_twisted_coxeter,
    k_adm_0,
    sigma_support,
    twisted_perm,
)
from coxtype.core.root_data import CoxeterDatum
from coxtype.core.weyl import AffineWeylGroup, MoveEffect, TwistedAction, WeylElement, action_for, group_for
from coxtype.exceptions import BudgetExceededError

logger = logging.getLogger(__name__)


class MoveKind(str, Enum):
    """How one step of a witness chain changes the element."""

    CYCLIC = "cyclic"
    DROP_LEFT = "drop-left"
    DROP_CONJ = "drop-conj"


@dataclass(frozen=True)
class Move:
    node: int
    kind: MoveKind


@dataclass(frozen=True)
class ReductionNode:
    """Status of ``X_x(tau)``: ``dim is None`` means empty.

    Replaying ``witness`` from ``element`` ends at a minimal-length element;
    ``dim`` equals the number of drops plus the length of that element.
    """

    element: WeylElement
    dim: Optional[int]
    witness: tuple[Move, ...] = ()

    @property
    def is_empty(self) -> bool:
        return self.dim is None


class DLReducer:
    """Memoized reduction for one ``(group, sigma, tau)``."""

    def __init__(
        self,
        group: AffineWeylGroup,
        action: TwistedAction,
        tau: WeylElement,
        config: Config = DEFAULT_CONFIG,
        move_order: Optional[Sequence[int]] = None,
    ):
        self.group = group
        self.action = action
        self.tau = tau
        self.config = config
        self.move_order = tuple(move_order) if move_order is not None else group.rd.nodes
        self._memo: dict[WeylElement, ReductionNode] = {}
        self._tau_class = group.kottwitz(tau)

    def _explore(self, x: WeylElement) -> Optional[tuple[WeylElement, tuple[Move, ...], int]]:
        """Find a member of the length-preserving class of x admitting a drop.

        Returns the member, the cyclic moves leading to it and the dropping node,
        or None when the class has no drop.
        """
        seen = {x}
        queue = deque([(x, ())])
        while queue:
            y, path = queue.popleft()
            for s in self.move_order:
                image, effect = self.action.twisted_conj_move(y, s)
                if effect is MoveEffect.DROP:
                    return y, path, s
                if effect is MoveEffect.KEEP and image not in seen:
                    seen.add(image)
                    if len(seen) > self.config.search_cap:
                        raise BudgetExceededError(
                            f"conjugation class search exceeded {self.config.search_cap} elements"
                        )
                    queue.append((image, path + (Move(s, MoveKind.CYCLIC),)))
        return None

    def reach_minimal(self, x: WeylElement) -> tuple[WeylElement, tuple[Move, ...]]:
        """Follow cyclic moves and conjugation drops down to a minimal-length element."""
        chain: list[Move] = []
        current = x
        while True:
            found = self._explore(current)
            if found is None:
                return current, tuple(chain)
            y, path, s = found
            chain.extend(path)
            chain.append(Move(s, MoveKind.DROP_CONJ))
            current = self.action.twisted_conj_move(y, s)[0]

    def base_case(self, x: WeylElement) -> ReductionNode:
        """Status of a minimal-length element."""
        if self.group.kottwitz(x) != self._tau_class:
            return ReductionNode(x, None)
        if not self.action.is_basic(x, self.config.newton_cap):
            return ReductionNode(x, None)
        return ReductionNode(x, self.group.length(x))

    def dim(self, x: WeylElement) -> ReductionNode:
        """``dim X_x(tau)`` with a replayable witness."""
        cached = self._memo.get(x)
        if cached is not None:
            return cached
        if self.group.kottwitz(x) != self._tau_class:
            result = ReductionNode(x, None)
        else:
            found = self._explore(x)
            if found is None:
                result = self.base_case(x)
            else:
                y, path, s = found
                gen = self.group.generators[s]
                conj = self.dim(self.action.twisted_conj_move(y, s)[0])
                left = self.dim(self.group.multiply(gen, y))
                branches = [
                    (node, kind)
                    for node, kind in ((conj, MoveKind.DROP_CONJ), (left, MoveKind.DROP_LEFT))
                    if not node.is_empty
                ]
                if not branches:
                    result = ReductionNode(x, None, path + (Move(s, MoveKind.DROP_CONJ),))
                else:
                    best, kind = max(branches, key=lambda b: b[0].dim)
                    assert best.dim is not None
                    result = ReductionNode(x, best.dim + 1, path + (Move(s, kind),) + best.witness)
        self._memo[x] = result
        if len(self._memo) > self.config.recursion_budget:
            raise BudgetExceededError(
                f"reduction memo exceeded {self.config.recursion_budget} entries"
            )
        return result

    def replay(self, node: ReductionNode) -> WeylElement:
        """Apply a witness chain and return the final element."""
        current = node.element
        for move in node.witness:
            gen = self.group.generators[move.node]
            if move.kind is MoveKind.DROP_LEFT:
                current = self.group.multiply(gen, current)
            else:
                current = self.action.twisted_conj_move(current, move.node)[0]
        return current


def reducer_for(
    datum: CoxeterDatum, config: Config = DEFAULT_CONFIG, move_order: Optional[Sequence[int]] = None
) -> DLReducer:
    return DLReducer(
        group_for(datum.affine_type),
        action_for(datum.affine_type, datum.sigma),
        basic_element(datum),
        config,
        move_order,
    )


def reach_minimal(
    x: WeylElement, datum: CoxeterDatum, config: Config = DEFAULT_CONFIG
) -> tuple[WeylElement, tuple[Move, ...]]:
    return reducer_for(datum, config).reach_minimal(x)


def base_case(x: WeylElement, datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> ReductionNode:
    return reducer_for(datum, config).base_case(x)


def dim_X_w(w: WeylElement, datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> ReductionNode:
    return reducer_for(datum, config).dim(w)


@dataclass(frozen=True)
class DimensionResult:
    """Dimension of ``X(mu, tau)_K`` computed over ``^K Adm(mu)_0``."""

    dimension: int
    exact: bool
    rank: int
    elements: tuple[ReductionNode, ...]

    @property
    def equals_rank(self) -> bool:
        return self.exact and self.dimension == self.rank


def dim_X_mu_tau_K(datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> DimensionResult:
    """Maximum of ``dim X_w(tau)`` over ``^K Adm(mu)_0``.

    The value is flagged exact only when the datum passes the inequality test;
    otherwise it is a lower bound. On products the rank is the sum over the
    quasi-simple factors, and equality holds iff it holds on every factor.
    """
    from coxtype.core.classifier import check_condition_3, total_rank_ss_J

    reducer = reducer_for(datum, config)
    group = reducer.group
    nodes = tuple(reducer.dim(w) for w in canonical_order(group, k_adm_0(datum, config)))
    dims = [n.dim for n in nodes if n.dim is not None]
    exact = check_condition_3(datum).passed
    logger.debug("dim over %d elements, %d nonempty", len(nodes), len(dims))
    return DimensionResult(max(dims, default=0), exact, total_rank_ss_J(datum), nodes)


def dim_equals_rank(datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> bool:
    return dim_X_mu_tau_K(datum, config).equals_rank


def support_orbit_bound(w: WeylElement, datum: CoxeterDatum) -> int:
    """Number of ``Ad(omega) o sigma``-orbits on ``supp_sigma(w)``."""
    group = group_for(datum.affine_type)
    perm = twisted_perm(datum, group.kottwitz(w))
    return len(perm.orbits(sigma_support(w, datum)))


def lower_bound_witness(datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> Optional[WeylElement]:
    """First twisted Coxeter ``w`` in ``^K Adm(mu)_0`` of length and dimension ``rank_ss(J_tau)``."""
    from coxtype.core.classifier import total_rank_ss_J

    rank = total_rank_ss_J(datum)
    reducer = reducer_for(datum, config)
    group = reducer.group
    for w in canonical_order(group, k_adm_0(datum, config)):
        if group.length(w) != rank or not is_twisted_coxeter(w, datum):
            continue
        if reducer.dim(w).dim == rank:
            return w
    return None
