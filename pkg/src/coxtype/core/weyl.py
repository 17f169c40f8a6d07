"""Arithmetic in the extended affine Weyl group ``X_* x| W_0`` of an adjoint datum.

An element ``t^lambda u`` is stored as the integer coweight ``lambda`` (fundamental
coweight coordinates) together with ``u`` as a permutation of the root list of the
RootData. The same structure serves every affine type, including products.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from coxtype.core.root_data import (
    AffineType,
    Coweight,
    DiagramAutomorphism,
    NodeSet,
    RootData,
    root_data_for,
)
from coxtype.exceptions import BudgetExceededError, InternalError, SemanticError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeylElement:
    """``t^translation * u`` with ``u`` acting on root indices."""

    translation: tuple[int, ...]
    finite: tuple[int, ...]
    finite_inv: tuple[int, ...] = field(compare=False, repr=False)


class MoveEffect(str, Enum):
    """Length change of a twisted conjugation move."""

    DROP = "drop"
    KEEP = "keep"
    RISE = "rise"


def _compose(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(u[k] for k in v)


def _invert(u: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(u)
    for k, image in enumerate(u):
        inv[image] = k
    return tuple(inv)


class AffineWeylGroup:
    """The extended affine Weyl group of an affine type."""

    def __init__(self, root_data: RootData):
        self.rd = root_data
        self.rank = root_data.rank
        self._positive_count = len(root_data.positive_roots)
        self._simple_index = [
            root_data.root_index[root_data.alpha(s)] for s in root_data.finite_nodes
        ]
        ident = tuple(range(len(root_data.roots)))
        self.identity = WeylElement((0,) * self.rank, ident, ident)

        self.generators: list[WeylElement] = [self._generator(s) for s in root_data.nodes]
        self._generator_of: dict[WeylElement, int] = {
            g: s for s, g in enumerate(self.generators)
        }

        self._kottwitz_cache: dict[WeylElement, WeylElement] = {}
        self._bruhat_cache: dict[tuple[WeylElement, WeylElement], bool] = {}
        self._build_omega()

    # -- construction -------------------------------------------------------------

    def make(self, translation: Sequence[int], finite: Sequence[int]) -> WeylElement:
        finite = tuple(finite)
        return WeylElement(tuple(translation), finite, _invert(finite))

    def reflection_perm(self, root: tuple[int, ...]) -> tuple[int, ...]:
        """Root permutation of the reflection ``s_beta``."""
        coroot = self.rd.coroot_of(root)
        perm = []
        for gamma in self.rd.roots:
            pairing = sum(a * b for a, b in zip(coroot, gamma))
            image = tuple(g - pairing * b for g, b in zip(gamma, root))
            perm.append(self.rd.root_index[image])
        return tuple(perm)

    def _generator(self, s: int) -> WeylElement:
        if s in self.rd.coord_of_node:
            return self.make((0,) * self.rank, self.reflection_perm(self.rd.alpha(s)))
        # s_0 = t^{theta^vee} s_theta
        theta = self.rd.highest_root(self.rd.node_component[s])
        return self.make(self.rd.coroot_of(theta), self.reflection_perm(theta))

    def translation(self, coweight: Sequence[int]) -> WeylElement:
        return self.make(coweight, self.identity.finite)

    def from_word(self, letters: Iterable[int], omega: Optional[WeylElement] = None) -> WeylElement:
        element = self.identity
        for s in letters:
            element = self.multiply(element, self.generators[s])
        if omega is not None:
            element = self.multiply(element, omega)
        return element

    # -- group law --------------------------------------------------------------------

    def act(self, u_inv: Sequence[int], coweight: Sequence[int | Fraction]) -> tuple:
        """``u(lambda)`` given ``u^-1`` as a root permutation."""
        roots = self.rd.roots
        return tuple(
            sum(c * r for c, r in zip(coweight, roots[u_inv[k]])) for k in self._simple_index
        )

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        """``t^l u * t^m v = t^{l + u(m)} uv``."""
        moved = self.act(a.finite_inv, b.translation)
        translation = tuple(x + y for x, y in zip(a.translation, moved))
        finite = _compose(a.finite, b.finite)
        return WeylElement(translation, finite, _compose(b.finite_inv, a.finite_inv))

    def product(self, *elements: WeylElement) -> WeylElement:
        result = self.identity
        for element in elements:
            result = self.multiply(result, element)
        return result

    def inverse(self, w: WeylElement) -> WeylElement:
        moved = self.act(w.finite, w.translation)
        return WeylElement(tuple(-x for x in moved), w.finite_inv, w.finite)

    def finite_part(self, w: WeylElement) -> WeylElement:
        return WeylElement((0,) * self.rank, w.finite, w.finite_inv)

    def is_translation(self, w: WeylElement) -> bool:
        return w.finite == self.identity.finite

    # -- length and descents ---------------------------------------------------------

    def length(self, w: WeylElement) -> int:
        """Iwahori-Matsumoto length of ``t^lambda u``."""
        total = 0
        roots = self.rd.roots
        for k in range(self._positive_count):
            m = sum(a * b for a, b in zip(w.translation, roots[k]))
            if w.finite_inv[k] < self._positive_count:
                total += abs(m)
            else:
                total += abs(m - 1)
        return total

    def is_left_descent(self, w: WeylElement, s: int) -> bool:
        """``l(s w) < l(w)``."""
        rd = self.rd
        if s in rd.coord_of_node:
            k = self._simple_index[rd.coord_of_node[s]]
            a = w.translation[rd.coord_of_node[s]]
            return a < 0 or (a == 0 and w.finite_inv[k] >= self._positive_count)
        theta = rd.highest_root(rd.node_component[s])
        c = sum(a * b for a, b in zip(w.translation, theta))
        k = rd.root_index[theta]
        return c > 1 or (c == 1 and w.finite_inv[k] < self._positive_count)

    def left_descents(self, w: WeylElement) -> list[int]:
        return [s for s in self.rd.nodes if self.is_left_descent(w, s)]

    def is_right_descent(self, w: WeylElement, s: int) -> bool:
        return self.is_left_descent(self.inverse(w), s)

    def right_descents(self, w: WeylElement) -> list[int]:
        inv = self.inverse(w)
        return [s for s in self.rd.nodes if self.is_left_descent(inv, s)]

    def reduced_word(self, w: WeylElement) -> tuple[tuple[int, ...], WeylElement]:
        """``(letters, omega)`` with ``w = s_{i1} ... s_{il} omega``.

        The least left descent is stripped at every step, so the word is
        deterministic.
        """
        letters = []
        current = w
        while True:
            descents = self.left_descents(current)
            if not descents:
                break
            s = descents[0]
            letters.append(s)
            current = self.multiply(self.generators[s], current)
        return tuple(letters), current

    def kottwitz(self, w: WeylElement) -> WeylElement:
        """The length-zero ``omega`` with ``w`` in ``W_a omega``."""
        cached = self._kottwitz_cache.get(w)
        if cached is None:
            cached = self.reduced_word(w)[1]
            self._kottwitz_cache[w] = cached
        return cached

    def support(self, w: WeylElement) -> NodeSet:
        """Letters of a reduced word of ``w omega^-1``."""
        return frozenset(self.reduced_word(w)[0])

    # -- Omega -------------------------------------------------------------------------

    def _build_omega(self) -> None:
        rd = self.rd
        per_component: list[list[tuple[str, WeylElement]]] = []
        for j in range(rd.component_count):
            options = [("1", self.identity)]
            for node in rd.minuscule_nodes(j):
                coweight = [0] * self.rank
                coweight[rd.coord_of_node[node]] = 1
                tau = self.reduced_word(self.translation(coweight))[1]
                options.append((f"tau{rd.local_label(node)}", tau))
            per_component.append(options)

        self.omega_elements: list[WeylElement] = []
        self._omega_label: dict[WeylElement, str] = {}
        for combo in itertools.product(*per_component):
            element = self.product(*(w for _, w in combo))
            label = ",".join(name for name, _ in combo)
            self.omega_elements.append(element)
            self._omega_label[element] = label
        self._by_omega_label = {label: w for w, label in self._omega_label.items()}

    def omega_label(self, omega: WeylElement) -> str:
        try:
            return self._omega_label[omega]
        except KeyError as e:
            raise InternalError(f"{omega} is not a length-zero element") from e

    def omega_from_label(self, label: str) -> WeylElement:
        try:
            return self._by_omega_label[label]
        except KeyError as e:
            raise SemanticError(f"unknown length-zero label {label!r}", "omega-label") from e

    def tau(self, label: int) -> WeylElement:
        """Product over components of ``tau_label`` where that node is minuscule."""
        rd = self.rd
        parts = []
        for j in range(rd.component_count):
            if label in (rd.local_label(s) for s in rd.minuscule_nodes(j)):
                parts.append(f"tau{label}")
            else:
                parts.append("1")
        if all(p == "1" for p in parts):
            raise SemanticError(f"tau{label} does not exist for {rd.affine_type}", "sigma-name")
        return self._by_omega_label[",".join(parts)]

    def ad(self, omega: WeylElement) -> DiagramAutomorphism:
        """Node permutation induced by conjugation with a length-zero element."""
        inv = self.inverse(omega)
        perm = []
        for g in self.generators:
            image = self.product(omega, g, inv)
            if image not in self._generator_of:
                raise InternalError("conjugate of a simple reflection is not simple")
            perm.append(self._generator_of[image])
        return DiagramAutomorphism(tuple(perm), f"Ad({self.omega_label(omega)})")

    def generator_index(self, w: WeylElement) -> Optional[int]:
        return self._generator_of.get(w)

    # -- Bruhat order and cosets ------------------------------------------------------

    def bruhat_leq(self, x: WeylElement, y: WeylElement) -> bool:
        """Bruhat order on ``W~``; elements in different ``W_a``-cosets are incomparable."""
        if self.kottwitz(x) != self.kottwitz(y):
            return False
        return self._bruhat(x, y)

    def _bruhat(self, x: WeylElement, y: WeylElement) -> bool:
        key = (x, y)
        cached = self._bruhat_cache.get(key)
        if cached is not None:
            return cached
        lx, ly = self.length(x), self.length(y)
        if lx >= ly:
            result = x == y
        else:
            s = self.left_descents(y)[0]
            sy = self.multiply(self.generators[s], y)
            if self.is_left_descent(x, s):
                result = self._bruhat(self.multiply(self.generators[s], x), sy)
            else:
                result = self._bruhat(x, sy)
        self._bruhat_cache[key] = result
        return result

    def is_in_KW(self, w: WeylElement, K: Iterable[int]) -> bool:
        """Whether ``w`` is the minimal element of ``W_K w``."""
        return not any(self.is_left_descent(w, s) for s in K)

    def min_coset_rep(self, w: WeylElement, K: Iterable[int]) -> WeylElement:
        K = sorted(set(K))
        current = w
        while True:
            s = next((t for t in K if self.is_left_descent(current, t)), None)
            if s is None:
                return current
            current = self.multiply(self.generators[s], current)

    def parabolic_elements(self, K: Iterable[int], budget: int) -> list[WeylElement]:
        """All elements of the finite parabolic subgroup ``W_K``.

        Raises:
            BudgetExceededError: If ``W_K`` has more than ``budget`` elements.
        """
        K = sorted(set(K))
        seen = {self.identity}
        order = [self.identity]
        queue = deque(order)
        while queue:
            w = queue.popleft()
            for s in K:
                nxt = self.multiply(w, self.generators[s])
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
                    queue.append(nxt)
                    if len(seen) > budget:
                        raise BudgetExceededError(
                            f"W_K for K={K} exceeds the coset budget {budget}"
                        )
        return order

    def longest_element(self, K: Iterable[int], budget: int) -> WeylElement:
        return max(self.parabolic_elements(K, budget), key=self.length)

    # -- coweights ------------------------------------------------------------------------

    def dominant(self, coweight: Sequence[int | Fraction]) -> tuple:
        """Dominant ``W_0``-representative of a coweight."""
        v = list(coweight)
        cartan = self.rd.cartan
        while True:
            i = next((k for k, x in enumerate(v) if x < 0), None)
            if i is None:
                return tuple(v)
            a = v[i]
            v = [x - a * c for x, c in zip(v, cartan[i])]

    def finite_orbit(self, coweight: Sequence[int]) -> list[tuple[int, ...]]:
        """The ``W_0``-orbit of an integral coweight, in discovery order."""
        cartan = self.rd.cartan
        start = tuple(coweight)
        seen = {start}
        order = [start]
        queue = deque(order)
        while queue:
            v = queue.popleft()
            for i, a in enumerate(v):
                if a == 0:
                    continue
                image = tuple(x - a * c for x, c in zip(v, cartan[i]))
                if image not in seen:
                    seen.add(image)
                    order.append(image)
                    queue.append(image)
        return order

    def pair_root(self, coweight: Sequence[int | Fraction], root: Sequence[int]) -> int | Fraction:
        return sum(a * b for a, b in zip(coweight, root))


class TwistedAction:
    """A diagram automorphism extended to a group automorphism of ``W~``.

    ``sigma`` is written as ``Ad(omega) o sigma_0`` where ``sigma_0`` maps affine
    nodes to affine nodes and therefore acts linearly on coweights and roots.
    """

    def __init__(self, group: AffineWeylGroup, sigma: DiagramAutomorphism):
        self.group = group
        self.sigma = sigma
        rd = group.rd
        self.order = sigma.order

        self.omega = self._split_omega()
        self.omega_inv = group.inverse(self.omega)
        sigma0 = group.ad(self.omega).inverse().compose(sigma)

        # coordinate permutation of sigma_0
        self._coord_perm = [rd.coord_of_node[sigma0(s)] for s in rd.node_of_coord]
        self._root_perm = tuple(
            rd.root_index[self._move_root(r)] for r in rd.roots
        )
        self._root_perm_inv = _invert(self._root_perm)

        for s, g in enumerate(group.generators):
            if self(g) != group.generators[sigma(s)]:
                raise InternalError(f"twisted action does not send s{s} to s{sigma(s)}")

    def _split_omega(self) -> WeylElement:
        rd, group = self.group.rd, self.group
        targets = {}
        for j, base in enumerate(rd.affine_nodes):
            image = self.sigma(base)
            targets[rd.node_component[image]] = image
        for omega in group.omega_elements:
            ad = group.ad(omega)
            if all(ad(rd.affine_nodes[k]) == t for k, t in targets.items()):
                return omega
        raise InternalError(f"no length-zero element realizes {self.sigma}")

    def _move_root(self, root: Sequence[int]) -> tuple[int, ...]:
        out = [0] * len(root)
        for i, x in enumerate(root):
            out[self._coord_perm[i]] = x
        return tuple(out)

    def _move_coweight(self, coweight: Sequence) -> tuple:
        out: list = [0] * len(coweight)
        for i, x in enumerate(coweight):
            out[self._coord_perm[i]] = x
        return tuple(out)

    def __call__(self, w: WeylElement) -> WeylElement:
        group = self.group
        finite = tuple(
            self._root_perm[w.finite[self._root_perm_inv[k]]] for k in range(len(w.finite))
        )
        inner = group.make(self._move_coweight(w.translation), finite)
        return group.product(self.omega, inner, self.omega_inv)

    def power(self, w: WeylElement, k: int) -> WeylElement:
        for _ in range(k % self.order):
            w = self(w)
        return w

    def linear(self, coweight: Sequence) -> tuple:
        """``p(sigma)`` on coweights."""
        return self.group.act(self.omega.finite_inv, self._move_coweight(coweight))

    def average(self, coweight: Sequence) -> tuple[Fraction, ...]:
        """Average of ``coweight`` over the powers of ``p(sigma)``."""
        total = [Fraction(0)] * len(coweight)
        current = tuple(Fraction(x) for x in coweight)
        for _ in range(self.order):
            total = [a + b for a, b in zip(total, current)]
            current = self.linear(current)
        return tuple(x / self.order for x in total)

    def twisted_conj_move(self, x: WeylElement, s: int) -> tuple[WeylElement, MoveEffect]:
        """``s x sigma(s)`` and how its length compares with ``x``."""
        group = self.group
        image = group.product(group.generators[s], x, group.generators[self.sigma(s)])
        delta = group.length(image) - group.length(x)
        effect = MoveEffect.DROP if delta < 0 else MoveEffect.RISE if delta > 0 else MoveEffect.KEEP
        return image, effect

    def orbit_action(self, omega: WeylElement) -> DiagramAutomorphism:
        """``Ad(omega) o sigma`` on nodes."""
        return self.group.ad(omega).compose(self.sigma)

    def newton_point(self, w: WeylElement, cap: int) -> Coweight:
        """Dominant Newton point of ``w sigma``.

        Raises:
            InternalError: If no power of the twisted product is a translation
                within ``cap`` steps.
        """
        group = self.group
        x = group.identity
        image = w
        for _ in range(self.order):
            x = group.multiply(x, image)
            image = self(image)
        power = x
        m = 1
        while not group.is_translation(power):
            power = group.multiply(power, x)
            m += 1
            if m > cap:
                raise InternalError(f"Newton iteration exceeded {cap} steps")
        scaled = tuple(Fraction(c, self.order * m) for c in power.translation)
        return Coweight(group.dominant(scaled))

    def is_basic(self, w: WeylElement, cap: int) -> bool:
        return self.newton_point(w, cap).is_zero


@lru_cache(maxsize=64)
def group_for(affine_type: AffineType) -> AffineWeylGroup:
    """Shared group instance for an affine type."""
    group = AffineWeylGroup(root_data_for(affine_type))
    logger.debug("group %s: |Omega| = %d", affine_type.label, len(group.omega_elements))
    return group


_ACTIONS: dict[tuple[AffineType, tuple[int, ...]], TwistedAction] = {}


def action_for(affine_type: AffineType, sigma: DiagramAutomorphism) -> TwistedAction:
    key = (affine_type, sigma.perm)
    action = _ACTIONS.get(key)
    if action is None:
        action = TwistedAction(group_for(affine_type), sigma)
        _ACTIONS[key] = action
    return action
