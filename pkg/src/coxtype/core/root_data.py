"""Exact affine root data for the irreducible affine types and their products.

Coordinates
-----------
Coweights are stored in the basis of fundamental coweights of the finite root
system, concatenated over components. In that basis ``<lambda, alpha_i> = lambda[i]``
and a root written in simple-root coordinates pairs with a coweight by a plain dot
product. The Euclidean realizations of the Bourbaki plates are kept for display and
for cross-checks.

Nodes
-----
Every component ``j`` owns the global node ids ``base_j .. base_j + r_j``; the first
one is the affine node 0, the rest are the Bourbaki labels 1..r_j. Finite nodes are
also numbered by their coweight coordinate.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from typing import Optional

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from coxtype.core.linalg import inverse
from coxtype.exceptions import PreconditionError, SemanticError

logger = logging.getLogger(__name__)

NodeSet = frozenset[int]

LONG = "long"
SHORT = "short"


class Family(str, Enum):
    """Cartan-Killing family of an irreducible component."""

    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"

    def admits_rank(self, rank: int) -> bool:
        """Whether the family exists in this rank (B2 is handled as C2)."""
        bounds = {
            Family.A: rank >= 1,
            Family.B: rank >= 3,
            Family.C: rank >= 2,
            Family.D: rank >= 4,
            Family.E: rank in (6, 7, 8),
            Family.F: rank == 4,
            Family.G: rank == 2,
        }
        return bounds[self]

    @property
    def is_exceptional(self) -> bool:
        return self in (Family.E, Family.F, Family.G)


def _unit(dim: int, *entries: tuple[int, int | Fraction]) -> tuple[Fraction, ...]:
    vec = [Fraction(0)] * dim
    for index, value in entries:
        vec[index] += Fraction(value)
    return tuple(vec)


def _e8_simple_roots() -> list[tuple[Fraction, ...]]:
    half = Fraction(1, 2)
    roots = [tuple([half] + [-half] * 6 + [half]), _unit(8, (0, 1), (1, 1))]
    roots.append(_unit(8, (0, -1), (1, 1)))
    for i in range(1, 6):
        roots.append(_unit(8, (i, -1), (i + 1, 1)))
    return roots


def euclidean_simple_roots(family: Family, rank: int) -> list[tuple[Fraction, ...]]:
    """Simple roots in the Euclidean realization of the Bourbaki plates."""
    r = rank
    if family is Family.A:
        return [_unit(r + 1, (i, 1), (i + 1, -1)) for i in range(r)]
    if family in (Family.B, Family.C, Family.D):
        roots = [_unit(r, (i, 1), (i + 1, -1)) for i in range(r - 1)]
        if family is Family.B:
            roots.append(_unit(r, (r - 1, 1)))
        elif family is Family.C:
            roots.append(_unit(r, (r - 1, 2)))
        else:
            roots.append(_unit(r, (r - 2, 1), (r - 1, 1)))
        return roots
    if family is Family.E:
        return _e8_simple_roots()[:r]
    if family is Family.F:
        half = Fraction(1, 2)
        return [
            _unit(4, (1, 1), (2, -1)),
            _unit(4, (2, 1), (3, -1)),
            _unit(4, (3, 1)),
            (half, -half, -half, -half),
        ]
    return [_unit(3, (0, 1), (1, -1)), _unit(3, (0, -2), (1, 1), (2, 1))]


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class ComponentType:
    """One irreducible component, e.g. ``C2``."""

    family: Family
    rank: int

    def __post_init__(self) -> None:
        if not self.family.admits_rank(self.rank):
            raise SemanticError(
                f"{self.family.value}{self.rank} is not an admissible type", "component-rank"
            )

    @property
    def label(self) -> str:
        return f"{self.family.value}{self.rank}"

    @classmethod
    def from_label(cls, label: str) -> "ComponentType":
        """Parse ``A3``, ``E6`` and so on; ``B2`` is normalized to ``C2``."""
        label = label.strip()
        try:
            family = Family(label[:1].upper())
            rank = int(label[1:])
        except ValueError as e:
            raise SemanticError(f"unknown component type {label!r}", "component-type") from e
        if family is Family.B and rank == 2:
            family = Family.C
        return cls(family, rank)


@dataclass(frozen=True)
class AffineType:
    """Ordered list of irreducible affine components with global node ids."""

    components: tuple[ComponentType, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise SemanticError("an affine type needs at least one component", "components")

    @classmethod
    def from_label(cls, label: str) -> "AffineType":
        return cls(tuple(ComponentType.from_label(part) for part in label.split("x")))

    @property
    def label(self) -> str:
        return "x".join(c.label for c in self.components)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def node_count(self) -> int:
        return sum(c.rank + 1 for c in self.components)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Coweight:
    """A rational coweight in fundamental-coweight coordinates."""

    coords: tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Iterable[int | Fraction]) -> "Coweight":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def zero(cls, rank: int) -> "Coweight":
        return cls((Fraction(0),) * rank)

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Coweight") -> "Coweight":
        return Coweight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Coweight") -> "Coweight":
        return Coweight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, factor: int | Fraction) -> "Coweight":
        return Coweight(tuple(a * factor for a in self.coords))

    def pair(self, root: Sequence[int]) -> Fraction:
        """``<lambda, alpha>`` for a root in simple-root coordinates."""
        return sum((a * b for a, b in zip(self.coords, root)), Fraction(0))

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def as_ints(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise PreconditionError(f"coweight {self} is not integral")
        return tuple(int(c) for c in self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class DiagramAutomorphism:
    """A permutation of the affine node set, with a display name."""

    perm: tuple[int, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def identity(cls, node_count: int) -> "DiagramAutomorphism":
        return cls(tuple(range(node_count)), "id")

    def __call__(self, node: int) -> int:
        return self.perm[node]

    def image(self, nodes: Iterable[int]) -> NodeSet:
        return frozenset(self.perm[s] for s in nodes)

    def compose(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        """``self o other``."""
        name = "*".join(n for n in (self.name, other.name) if n and n != "id") or "id"
        return DiagramAutomorphism(tuple(self.perm[s] for s in other.perm), name)

    def inverse(self) -> "DiagramAutomorphism":
        inv = [0] * len(self.perm)
        for s, t in enumerate(self.perm):
            inv[t] = s
        return DiagramAutomorphism(tuple(inv))

    def conjugate_by(self, phi: "DiagramAutomorphism") -> "DiagramAutomorphism":
        """``phi o self o phi^-1``."""
        return DiagramAutomorphism(phi.compose(self).compose(phi.inverse()).perm)

    @property
    def is_identity(self) -> bool:
        return all(s == t for s, t in enumerate(self.perm))

    @cached_property
    def order(self) -> int:
        return lcm(*(len(orbit) for orbit in self.orbits()))

    def orbit_of(self, node: int) -> NodeSet:
        orbit = {node}
        cur = self.perm[node]
        while cur != node:
            orbit.add(cur)
            cur = self.perm[cur]
        return frozenset(orbit)

    def orbits(self, nodes: Optional[Iterable[int]] = None) -> list[NodeSet]:
        """Orbits meeting ``nodes`` (all nodes by default), sorted by least element."""
        pool = range(len(self.perm)) if nodes is None else sorted(set(nodes))
        seen: set[int] = set()
        orbits = []
        for s in pool:
            if s in seen:
                continue
            orbit = self.orbit_of(s)
            seen |= orbit
            orbits.append(orbit)
        return sorted(orbits, key=min)

    def closure(self, nodes: Iterable[int]) -> NodeSet:
        """Smallest stable set containing ``nodes``."""
        result: set[int] = set()
        for s in nodes:
            if s not in result:
                result |= self.orbit_of(s)
        return frozenset(result)

    def is_stable(self, nodes: Iterable[int]) -> bool:
        nodes = frozenset(nodes)
        return self.image(nodes) == nodes

    def __str__(self) -> str:
        return self.name or "perm[" + ",".join(map(str, self.perm)) + "]"


@dataclass
class _Component:
    """Per-component tables; internal to RootData."""

    ctype: ComponentType
    base: int
    coord_base: int
    euclid: list[tuple[Fraction, ...]]
    cartan: list[list[int]]
    positive_roots: list[tuple[int, ...]]
    highest_root: tuple[int, ...]


class RootData:
    """Roots, coroots, Cartan matrices and automorphisms of an affine type."""

    def __init__(self, affine_type: AffineType):
        self.affine_type = affine_type
        self.rank = affine_type.rank
        self.node_count = affine_type.node_count

        self._components: list[_Component] = []
        self.node_component: list[int] = []
        self.coord_of_node: dict[int, int] = {}
        self.node_of_coord: list[int] = []

        base = coord_base = 0
        for j, ctype in enumerate(affine_type.components):
            euclid = euclidean_simple_roots(ctype.family, ctype.rank)
            cartan = [
                [int(2 * _dot(a, b) / _dot(a, a)) for b in euclid] for a in euclid
            ]
            positive = self._positive_roots(cartan)
            highest = max(positive, key=lambda r: (sum(r), r))
            self._components.append(
                _Component(ctype, base, coord_base, euclid, cartan, positive, highest)
            )
            self.node_component.extend([j] * (ctype.rank + 1))
            for i in range(ctype.rank):
                self.coord_of_node[base + 1 + i] = coord_base + i
                self.node_of_coord.append(base + 1 + i)
            base += ctype.rank + 1
            coord_base += ctype.rank

        self.nodes: tuple[int, ...] = tuple(range(self.node_count))
        self.affine_nodes: tuple[int, ...] = tuple(c.base for c in self._components)
        self.finite_nodes: tuple[int, ...] = tuple(self.node_of_coord)

        self.positive_roots: list[tuple[int, ...]] = [
            self._embed(c, r) for c in self._components for r in c.positive_roots
        ]
        self.positive_roots.sort(key=lambda r: (sum(r), r))
        self.roots: list[tuple[int, ...]] = self.positive_roots + [
            tuple(-x for x in r) for r in self.positive_roots
        ]
        self.root_index: dict[tuple[int, ...], int] = {r: k for k, r in enumerate(self.roots)}
        self.two_rho: tuple[int, ...] = tuple(
            sum(r[i] for r in self.positive_roots) for i in range(self.rank)
        )
        logger.debug(
            "root data %s: rank %d, %d positive roots",
            affine_type.label,
            self.rank,
            len(self.positive_roots),
        )

    @staticmethod
    def _positive_roots(cartan: list[list[int]]) -> list[tuple[int, ...]]:
        """All positive roots of a finite root system in simple-root coordinates."""
        r = len(cartan)
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        found = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(r):
                    pairing = sum(beta[j] * cartan[i][j] for j in range(r))
                    image = tuple(beta[j] - pairing * (j == i) for j in range(r))
                    if image not in found:
                        found.add(image)
                        nxt.append(image)
            frontier = nxt
        return sorted(
            (b for b in found if all(x >= 0 for x in b)), key=lambda b: (sum(b), b)
        )

    def _embed(self, comp: _Component, root: Sequence[int]) -> tuple[int, ...]:
        vec = [0] * self.rank
        vec[comp.coord_base : comp.coord_base + len(root)] = root
        return tuple(vec)

    # -- nodes and components -------------------------------------------------

    @property
    def component_count(self) -> int:
        return len(self._components)

    def component_type(self, j: int) -> ComponentType:
        return self._components[j].ctype

    def component_nodes(self, j: int) -> tuple[int, ...]:
        c = self._components[j]
        return tuple(range(c.base, c.base + c.ctype.rank + 1))

    def local_label(self, node: int) -> int:
        """Bourbaki label of a global node inside its component."""
        return node - self._components[self.node_component[node]].base

    def global_node(self, component: int, label: int) -> int:
        c = self._components[component]
        if not 0 <= label <= c.ctype.rank:
            raise SemanticError(
                f"node {label} does not exist in {c.ctype.label}", "node-range"
            )
        return c.base + label

    def is_finite_type(self, nodes: Iterable[int]) -> bool:
        """True iff W_J is finite, i.e. J omits a node of every component."""
        nodes = frozenset(nodes)
        return all(
            not set(self.component_nodes(j)) <= nodes for j in range(self.component_count)
        )

    def component_coords(self, j: int) -> range:
        c = self._components[j]
        return range(c.coord_base, c.coord_base + c.ctype.rank)

    # -- roots and coroots ---------------------------------------------------------

    def highest_root(self, j: int) -> tuple[int, ...]:
        c = self._components[j]
        return self._embed(c, c.highest_root)

    def alpha(self, s: int) -> tuple[int, ...]:
        """Simple affine root attached to ``s`` (its linear part; -theta on node 0)."""
        if s in self.coord_of_node:
            vec = [0] * self.rank
            vec[self.coord_of_node[s]] = 1
            return tuple(vec)
        return tuple(-x for x in self.highest_root(self.node_component[s]))

    def inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        """Invariant inner product of two roots given in simple-root coordinates."""
        total = Fraction(0)
        for j, c in enumerate(self._components):
            coords = self.component_coords(j)
            for i, x in zip(range(c.ctype.rank), coords):
                if a[x] == 0:
                    continue
                for k, y in zip(range(c.ctype.rank), coords):
                    if b[y]:
                        total += a[x] * b[y] * _dot(c.euclid[i], c.euclid[k])
        return total

    def norm(self, root: Sequence[int]) -> Fraction:
        return self.inner(root, root)

    @lru_cache(maxsize=None)
    def coroot_of(self, root: tuple[int, ...]) -> tuple[int, ...]:
        """``alpha^vee`` in fundamental-coweight coordinates."""
        n = self.norm(root)
        out = []
        for i in range(self.rank):
            unit = tuple(int(i == k) for k in range(self.rank))
            value = 2 * self.inner(root, unit) / n
            out.append(int(value))
        return tuple(out)

    def coroot(self, s: int) -> tuple[int, ...]:
        return self.coroot_of(self.alpha(s))

    def affine_cartan(self, s: int, t: int) -> int:
        """``A(s, t) = <alpha_s^vee, alpha_t>``."""
        return sum(a * b for a, b in zip(self.coroot(s), self.alpha(t)))

    @cached_property
    def cartan(self) -> list[list[int]]:
        """Finite Cartan matrix in coordinate order, block diagonal over components."""
        return [
            [self.affine_cartan(s, t) for t in self.finite_nodes] for s in self.finite_nodes
        ]

    def node_norm(self, s: int) -> Fraction:
        return self.norm(self.alpha(s))

    def is_long(self, s: int) -> bool:
        j = self.node_component[s]
        return self.node_norm(s) == max(self.node_norm(t) for t in self.component_nodes(j))

    def pairing(self, coweight: Sequence[int | Fraction]) -> int | Fraction:
        """``<lambda, 2 rho>``."""
        return sum(x * y for x, y in zip(coweight, self.two_rho))

    def fundamental_pairings(self) -> tuple[int, ...]:
        """``<omega_i^vee, 2 rho>`` in coordinate order."""
        return self.two_rho

    def minuscule_nodes(self, j: int) -> tuple[int, ...]:
        """Finite nodes of component ``j`` whose coefficient in theta is 1."""
        theta = self.highest_root(j)
        return tuple(
            self.node_of_coord[x] for x in self.component_coords(j) if theta[x] == 1
        )

    # -- Euclidean realization --------------------------------------------------------

    def euclidean_root(self, root: Sequence[int]) -> tuple[tuple[Fraction, ...], ...]:
        """Per-component Euclidean vectors of a root."""
        out = []
        for j, c in enumerate(self._components):
            dim = len(c.euclid[0])
            vec = [Fraction(0)] * dim
            for i, x in enumerate(self.component_coords(j)):
                for d in range(dim):
                    vec[d] += root[x] * c.euclid[i][d]
            out.append(tuple(vec))
        return tuple(out)

    def euclidean_coweight(self, coweight: Coweight) -> tuple[tuple[Fraction, ...], ...]:
        """Per-component Euclidean vectors of a coweight.

        Uses ``omega_i^vee = sum_k (A^-1)_{ik} alpha_k^vee`` with Euclidean coroots
        ``2 alpha / (alpha, alpha)``.
        """
        out = []
        for j, c in enumerate(self._components):
            inv = inverse(c.cartan)
            dim = len(c.euclid[0])
            vec = [Fraction(0)] * dim
            for i, x in enumerate(self.component_coords(j)):
                if coweight.coords[x] == 0:
                    continue
                for k, alpha in enumerate(c.euclid):
                    factor = coweight.coords[x] * inv[i][k] * 2 / _dot(alpha, alpha)
                    for d in range(dim):
                        vec[d] += factor * alpha[d]
            out.append(tuple(vec))
        return tuple(out)

    # -- parabolic subsystems -------------------------------------------------------

    def phi_J_data(self, J: Iterable[int]) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
        """Roots of ``Phi_J`` and a basis of ``R Phi_J^vee`` (the coroots of J).

        Raises:
            PreconditionError: If ``W_J`` is infinite.
        """
        J = sorted(set(J))
        if not self.is_finite_type(J):
            raise PreconditionError(f"W_J is infinite for J={J}")
        simple = [self.alpha(s) for s in J]
        found = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for s in J:
                    pairing = sum(a * b for a, b in zip(self.coroot(s), beta))
                    image = tuple(b - pairing * a for a, b in zip(self.alpha(s), beta))
                    if image not in found:
                        found.add(image)
                        nxt.append(image)
            frontier = nxt
        return sorted(found, key=lambda r: (sum(r), r)), [self.coroot(s) for s in J]

    # -- Dynkin diagram ------------------------------------------------------------------

    @cached_property
    def dynkin_graph(self) -> nx.Graph:
        """Undirected affine Dynkin diagram; ``bond`` is ``A(s,t) * A(t,s)``."""
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes)
        for s, t in itertools.combinations(self.nodes, 2):
            a, b = self.affine_cartan(s, t), self.affine_cartan(t, s)
            if a:
                graph.add_edge(s, t, bond=a * b)
        return graph

    @cached_property
    def cartan_digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        for s, t in itertools.permutations(self.nodes, 2):
            a = self.affine_cartan(s, t)
            if a:
                graph.add_edge(s, t, a=a)
        return graph

    def connected_components(self, nodes: Iterable[int]) -> list[NodeSet]:
        sub = self.dynkin_graph.subgraph(nodes)
        return sorted((frozenset(c) for c in nx.connected_components(sub)), key=min)

    def adjacent(self, s: int, t: int) -> bool:
        return self.dynkin_graph.has_edge(s, t)

    def double_bonds(self) -> list[tuple[int, int]]:
        return sorted(
            (min(s, t), max(s, t))
            for s, t, bond in self.dynkin_graph.edges(data="bond")
            if bond == 2
        )

    def preserves_cartan(self, perm: Sequence[int]) -> bool:
        return all(
            self.affine_cartan(s, t) == self.affine_cartan(perm[s], perm[t])
            for s in self.nodes
            for t in self.nodes
        )

    @cached_property
    def automorphisms(self) -> list[DiagramAutomorphism]:
        """All Cartan-preserving permutations of the affine nodes."""
        matcher = DiGraphMatcher(
            self.cartan_digraph,
            self.cartan_digraph,
            edge_match=lambda x, y: x["a"] == y["a"],
        )
        perms = {
            tuple(mapping[s] for s in self.nodes) for mapping in matcher.isomorphisms_iter()
        }
        return [DiagramAutomorphism(p) for p in sorted(perms)]

    # -- orientation ------------------------------------------------------------------

    def orientation_keys(self) -> tuple[int, ...]:
        """End nodes of double bonds of B and C components."""
        keys = []
        for j in range(self.component_count):
            ctype = self.component_type(j)
            if ctype.family is Family.B:
                keys.append(self.global_node(j, ctype.rank))
            elif ctype.family is Family.C:
                keys.extend([self.global_node(j, 0), self.global_node(j, ctype.rank)])
        return tuple(keys)

    def intrinsic_orientation(self) -> dict[int, str]:
        return {s: LONG if self.is_long(s) else SHORT for s in self.orientation_keys()}

    def longer_node(self, bond: tuple[int, int], orientation: dict[int, str]) -> int:
        """The longer node of a double bond under an orientation."""
        s, t = bond
        for end, other in ((s, t), (t, s)):
            if end in orientation:
                return end if orientation[end] == LONG else other
        return s if self.node_norm(s) > self.node_norm(t) else t

    def long_side_nodes(self, orientation: dict[int, str]) -> NodeSet:
        return frozenset(self.longer_node(b, orientation) for b in self.double_bonds())


@lru_cache(maxsize=64)
def root_data_for(affine_type: AffineType) -> RootData:
    """Shared RootData instance for an affine type."""
    return RootData(affine_type)


def _rotation(rd: RootData, steps: int) -> tuple[int, ...]:
    perm = list(rd.nodes)
    for j in range(rd.component_count):
        nodes = rd.component_nodes(j)
        n = len(nodes)
        for k, s in enumerate(nodes):
            perm[s] = nodes[(k + steps) % n]
    return tuple(perm)


def _finite_flip(rd: RootData) -> tuple[int, ...]:
    perm = list(rd.nodes)
    for j in range(rd.component_count):
        ctype = rd.component_type(j)
        r = ctype.rank
        if ctype.family is Family.A and r >= 2:
            pairs = {i: r + 1 - i for i in range(1, r + 1)}
        elif ctype.family is Family.D:
            pairs = {r - 1: r, r: r - 1}
        elif ctype.family is Family.E and r == 6:
            pairs = {1: 6, 6: 1, 3: 5, 5: 3}
        else:
            raise SemanticError(
                f"{ctype.label} has no nontrivial finite diagram automorphism", "sigma-name"
            )
        for i, k in pairs.items():
            perm[rd.global_node(j, i)] = rd.global_node(j, k)
    return tuple(perm)


def _factor_shift(rd: RootData) -> tuple[int, ...]:
    comps = rd.affine_type.components
    if len(comps) < 2 or len(set(comps)) != 1:
        raise SemanticError("swap needs at least two identical components", "sigma-name")
    r = len(comps)
    perm = list(rd.nodes)
    for j in range(r):
        for label in range(comps[j].rank + 1):
            perm[rd.global_node(j, label)] = rd.global_node((j + 1) % r, label)
    return tuple(perm)


_ALIASES = {"ς0": "varsigma0", "¹ς0": "swap", "ϱ": "rho", "τ": "tau"}


def _normalize_token(token: str) -> str:
    token = token.strip()
    for alias, plain in _ALIASES.items():
        token = token.replace(alias, plain)
    return token


def _token_perm(token: str, rd: RootData) -> tuple[int, ...]:
    if token == "id":
        return tuple(rd.nodes)
    if token == "varsigma0":
        return _finite_flip(rd)
    if token == "swap":
        return _factor_shift(rd)
    if token.startswith("rho") and token[3:].isdigit():
        if any(c.family is not Family.A for c in rd.affine_type.components):
            raise SemanticError("rho_i is defined on type A only", "sigma-name")
        return _rotation(rd, int(token[3:]))
    if token.startswith("Ad(tau") and token.endswith(")") and token[6:-1].isdigit():
        from coxtype.core.weyl import group_for

        group = group_for(rd.affine_type)
        return group.ad(group.tau(int(token[6:-1]))).perm
    if token.startswith("perm[") and token.endswith("]"):
        try:
            perm = tuple(int(x) for x in token[5:-1].split(",") if x.strip())
        except ValueError as e:
            raise SemanticError(f"bad permutation {token!r}", "sigma-name") from e
        if sorted(perm) != list(rd.nodes):
            raise SemanticError(f"{token} is not a permutation of the nodes", "sigma-name")
        return perm
    raise SemanticError(f"unknown automorphism {token!r}", "sigma-name")


def named_automorphism(name: str, affine_type: AffineType) -> DiagramAutomorphism:
    """Resolve a named automorphism such as ``rho2*varsigma0`` or ``Ad(tau1)``.

    ``a*b`` means ``a o b``. Unicode spellings (``ς0``, ``ϱ2``, ``Ad(τ1)``, ``¹ς0``)
    are accepted.

    Raises:
        SemanticError: If the name is invalid for the type or breaks the Cartan matrix.
    """
    rd = root_data_for(affine_type)
    tokens = [_normalize_token(t) for t in name.split("*")]
    perm = tuple(rd.nodes)
    for token in reversed(tokens):
        step = _token_perm(token, rd)
        perm = tuple(step[s] for s in perm)
    if not rd.preserves_cartan(perm):
        raise SemanticError(f"{name} does not preserve the Cartan matrix", "sigma-preserves-cartan")
    return DiagramAutomorphism(perm, "*".join(tokens))


def catalog_names(affine_type: AffineType) -> Iterator[str]:
    rd = root_data_for(affine_type)
    families = {c.family for c in affine_type.components}
    singles = ["id"]
    if families == {Family.A}:
        singles += [f"rho{i}" for i in range(1, max(c.rank for c in affine_type.components) + 1)]
    else:
        minuscule = sorted(
            {rd.local_label(s) for j in range(rd.component_count) for s in rd.minuscule_nodes(j)}
        )
        singles += [f"Ad(tau{i})" for i in minuscule]
    yield from singles
    yield "varsigma0"
    for s in singles[1:]:
        yield f"{s}*varsigma0"
    if len(affine_type.components) > 1:
        yield "swap"
        for s in singles[1:]:
            yield f"swap*{s}"
        yield "swap*varsigma0"


def describe_automorphism(perm: Sequence[int], affine_type: AffineType) -> DiagramAutomorphism:
    """Attach the shortest catalogued name to a permutation, else ``perm[...]``."""
    perm = tuple(perm)
    for name in catalog_names(affine_type):
        try:
            candidate = named_automorphism(name, affine_type)
        except SemanticError:
            continue
        if candidate.perm == perm:
            return candidate
    return DiagramAutomorphism(perm, "perm[" + ",".join(map(str, perm)) + "]")


@dataclass(frozen=True)
class CoxeterDatum:
    """An enhanced Coxeter datum ``(W_a, sigma, mu, K)`` with an optional orientation.

    ``orientation`` lists ``(node, "long" | "short")`` pairs for end nodes of double
    bonds; unspecified keys fall back to the intrinsic root lengths.
    """

    affine_type: AffineType
    sigma: DiagramAutomorphism
    mu: Coweight
    K: NodeSet
    orientation: Optional[tuple[tuple[int, str], ...]] = None

    def __post_init__(self) -> None:
        rd = self.root_data
        if len(self.sigma.perm) != rd.node_count or not rd.preserves_cartan(self.sigma.perm):
            raise SemanticError("sigma must preserve the affine Cartan matrix", "sigma-preserves-cartan")
        if len(self.mu) != rd.rank or not self.mu.is_integral:
            raise SemanticError("mu must be an integral coweight of the right rank", "mu-integral")
        if not self.mu.is_dominant:
            raise SemanticError("mu must be dominant", "mu-dominant")
        for j in range(rd.component_count):
            if all(self.mu.coords[x] == 0 for x in rd.component_coords(j)):
                raise SemanticError(f"mu is central in component {j}", "mu-noncentral")
        if not self.K <= frozenset(rd.nodes):
            raise SemanticError("K contains unknown nodes", "K-nodes")
        if not self.sigma.is_stable(self.K):
            raise SemanticError("K must be sigma-stable", "K-sigma-stable")
        if not rd.is_finite_type(self.K):
            raise SemanticError("W_K must be finite", "K-finite")
        if self.orientation is not None:
            keys = set(rd.orientation_keys())
            for node, length in self.orientation:
                if node not in keys or length not in (LONG, SHORT):
                    raise SemanticError(
                        f"bad orientation entry {node}:{length}", "orientation-keys"
                    )

    @property
    def root_data(self) -> RootData:
        return root_data_for(self.affine_type)

    @property
    def rank(self) -> int:
        return self.affine_type.rank

    @property
    def lhs(self) -> int:
        """``<mu, 2 rho>``."""
        return int(self.root_data.pairing(self.mu.coords))

    def orientation_map(self) -> dict[int, str]:
        resolved = self.root_data.intrinsic_orientation()
        resolved.update(dict(self.orientation or ()))
        return resolved

    def with_K(self, K: Iterable[int]) -> "CoxeterDatum":
        return replace(self, K=frozenset(K))

    def with_orientation(self, orientation: Optional[dict[int, str]]) -> "CoxeterDatum":
        entries = None if orientation is None else tuple(sorted(orientation.items()))
        return replace(self, orientation=entries)

    @property
    def is_quasi_simple(self) -> bool:
        return len(quasi_simple_factors(self)) == 1


def quasi_simple_factors(datum: CoxeterDatum) -> list[CoxeterDatum]:
    """Split a datum along the sigma-orbits of its components."""
    rd = datum.root_data
    remaining = list(range(rd.component_count))
    factors = []
    while remaining:
        orbit = {remaining[0]}
        frontier = [remaining[0]]
        while frontier:
            j = frontier.pop()
            for s in rd.component_nodes(j):
                k = rd.node_component[datum.sigma(s)]
                if k not in orbit:
                    orbit.add(k)
                    frontier.append(k)
        comps = sorted(orbit)
        remaining = [j for j in remaining if j not in orbit]

        sub_type = AffineType(tuple(rd.component_type(j) for j in comps))
        old_nodes = [s for j in comps for s in rd.component_nodes(j)]
        renumber = {s: k for k, s in enumerate(old_nodes)}
        coords = [x for j in comps for x in rd.component_coords(j)]
        orientation = None
        if datum.orientation is not None:
            orientation = tuple(
                (renumber[s], v) for s, v in datum.orientation if s in renumber
            )
        factors.append(
            CoxeterDatum(
                affine_type=sub_type,
                sigma=DiagramAutomorphism(tuple(renumber[datum.sigma(s)] for s in old_nodes)),
                mu=Coweight(tuple(datum.mu.coords[x] for x in coords)),
                K=frozenset(renumber[s] for s in datum.K if s in renumber),
                orientation=orientation,
            )
        )
    return factors
