"""Bruhat-Tits strata: parahoric data of each element, closure order and Hasse diagram."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from coxtype.config import DEFAULT_CONFIG, Config
from coxtype.core.admissible import (
    canonical_order,
    direct_equality,
    is_twisted_coxeter,
    k_adm_0,
    sigma_support,
    twisted_perm,
)
from coxtype.core.root_data import CoxeterDatum, DiagramAutomorphism, NodeSet, RootData
from coxtype.core.weyl import WeylElement, action_for, group_for
from coxtype.exceptions import DiscrepancyError, PreconditionError

logger = logging.getLogger(__name__)

ORDER_NAMES = ("bruhat", "closure", "dl_support", "sigma_support")


def i_set_general(w: WeylElement, datum: CoxeterDatum) -> NodeSet:
    """Largest subset I of K with ``Ad(w) o sigma (I) = I``."""
    group = group_for(datum.affine_type)
    inv = group.inverse(w)
    image: dict[int, int | None] = {}
    for s in datum.K:
        conj = group.product(w, group.generators[datum.sigma(s)], inv)
        image[s] = group.generator_index(conj)
    current = set(datum.K)
    while True:
        kept = {s for s in current if image[s] in current}
        if kept == current:
            return frozenset(current)
        current = kept


def i_set_coxeter(w: WeylElement, datum: CoxeterDatum) -> NodeSet:
    """``I(K, w, sigma)`` for a twisted Coxeter element.

    The nodes outside the support that commute with all of it and whose
    ``Ad(tau) o sigma``-orbit stays in K.

    Raises:
        PreconditionError: If w is not twisted Coxeter.
    """
    if not is_twisted_coxeter(w, datum):
        raise PreconditionError("i_set_coxeter needs a twisted Coxeter element")
    rd = datum.root_data
    group = group_for(datum.affine_type)
    support = sigma_support(w, datum)
    perm = twisted_perm(datum, group.kottwitz(w))
    return frozenset(
        s
        for s in rd.nodes
        if s not in support
        and not any(rd.adjacent(s, t) for t in support)
        and perm.orbit_of(s) <= datum.K
    )


def closure_leq(
    w1: WeylElement, w2: WeylElement, datum: CoxeterDatum, config: Config = DEFAULT_CONFIG
) -> bool:
    """``w1 <=_{K, sigma} w2``: some ``u`` in ``W_K`` has ``u^-1 w1 sigma(u) <= w2``."""
    group = group_for(datum.affine_type)
    action = action_for(datum.affine_type, datum.sigma)
    for u in group.parabolic_elements(datum.K, config.coset_budget):
        moved = group.product(group.inverse(u), w1, action(u))
        if group.bruhat_leq(moved, w2):
            return True
    return False


def recover_support(
    union_set: Iterable[int],
    K: NodeSet,
    rd: RootData,
    perm: Optional[DiagramAutomorphism] = None,
) -> NodeSet:
    """Union of the connected components of ``union_set`` that meet the complement of K.

    With ``perm`` (the ``Ad(tau) o sigma`` of the stratum) components are first
    grouped into perm-stable unions, since a sigma-support may have a component
    inside K whose perm-image does not.
    """
    components = rd.connected_components(union_set)
    linked = nx.Graph()
    linked.add_nodes_from(range(len(components)))
    if perm is not None:
        for i, a in enumerate(components):
            for j, b in enumerate(components):
                if i < j and perm.closure(a) & b:
                    linked.add_edge(i, j)
    kept: set[int] = set()
    for group in nx.connected_components(linked):
        nodes = frozenset().union(*(components[i] for i in group))
        if not nodes <= K:
            kept |= nodes
    return frozenset(kept)


def _arm_lengths(graph: nx.Graph, center: int) -> list[int]:
    arms = []
    for start in graph.neighbors(center):
        length, previous, current = 1, center, start
        while True:
            nxt = [n for n in graph.neighbors(current) if n != previous]
            if not nxt:
                break
            previous, current = current, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def finite_type_name(nodes: Iterable[int], rd: RootData) -> str:
    """Cartan-Killing name of the finite diagram on ``nodes``, components joined by ``x``."""
    names = []
    for component in rd.connected_components(nodes):
        graph = rd.dynkin_graph.subgraph(component)
        n = len(component)
        bonds = {bond for _, _, bond in graph.edges(data="bond")}
        if 3 in bonds:
            names.append("G2")
        elif 2 in bonds:
            if n == 2:
                names.append("B2")
            else:
                s, t = next((a, b) for a, b, bond in graph.edges(data="bond") if bond == 2)
                leaf = s if graph.degree(s) == 1 else t if graph.degree(t) == 1 else None
                if leaf is None:
                    names.append("F4")
                else:
                    other = t if leaf == s else s
                    short_leaf = rd.node_norm(leaf) < rd.node_norm(other)
                    names.append(f"{'B' if short_leaf else 'C'}{n}")
        else:
            branch = [v for v in component if graph.degree(v) == 3]
            if not branch:
                names.append(f"A{n}")
            else:
                arms = _arm_lengths(graph, branch[0])
                names.append(f"D{n}" if arms[:2] == [1, 1] else f"E{n}")
    return "x".join(names) if names else "trivial"


@dataclass(frozen=True)
class StratumDescriptor:
    """Parahoric data attached to one element of ``^K Adm(mu)_0``."""

    w: WeylElement
    support: NodeSet
    i_set: NodeSet
    parahoric_type: NodeSet
    residual_diagram: str
    frobenius: DiagramAutomorphism
    dl_element: WeylElement
    dimension: int


def describe_stratum(w: WeylElement, datum: CoxeterDatum) -> StratumDescriptor:
    group = group_for(datum.affine_type)
    omega = group.kottwitz(w)
    support = sigma_support(w, datum)
    i_set = i_set_general(w, datum)
    return StratumDescriptor(
        w=w,
        support=support,
        i_set=i_set,
        parahoric_type=support | i_set,
        residual_diagram=finite_type_name(support, datum.root_data),
        frobenius=twisted_perm(datum, omega),
        dl_element=group.multiply(w, group.inverse(omega)),
        dimension=group.length(w),
    )


@dataclass(frozen=True)
class StrataPoset:
    strata: tuple[StratumDescriptor, ...]
    covers: tuple[tuple[int, int], ...]
    coxeter_type: bool


def strata_poset(datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> StrataPoset:
    """Descriptors of all strata and the covering relations of the closure order.

    Raises:
        DiscrepancyError: If, in a Coxeter-type datum, the parahoric types fail to
            determine the strata.
    """
    group = group_for(datum.affine_type)
    elements = canonical_order(group, k_adm_0(datum, config))
    strata = tuple(describe_stratum(w, datum) for w in elements)
    coxeter = direct_equality(datum, config)

    if coxeter:
        types = [s.parahoric_type for s in strata]
        if len(set(types)) != len(types):
            raise DiscrepancyError("parahoric types do not determine the strata")
        for s in strata:
            if recover_support(s.parahoric_type, datum.K, datum.root_data, s.frobenius) != s.support:
                raise DiscrepancyError(f"support of {s.w} is not recovered from its parahoric type")

    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(elements)))
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            if i != j and closure_leq(a, b, datum, config):
                graph.add_edge(i, j)
    if nx.is_directed_acyclic_graph(graph):
        hasse = nx.transitive_reduction(graph)
    else:
        logger.warning("closure relation has cycles; reporting all relations")
        hasse = graph
    return StrataPoset(strata, tuple(sorted(hasse.edges())), coxeter)


@dataclass(frozen=True)
class OrderRelations:
    elements: tuple[WeylElement, ...]
    matrices: dict[str, tuple[tuple[bool, ...], ...]]


def order_relations(datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> OrderRelations:
    """The four candidate orders on ``^K Adm(mu)_0`` as boolean matrices."""
    group = group_for(datum.affine_type)
    elements = tuple(canonical_order(group, k_adm_0(datum, config)))
    dl_supports = [group.support(w) for w in elements]
    sigma_supports = [sigma_support(w, datum) for w in elements]

    def matrix(test: Callable[[int, int], bool]) -> tuple[tuple[bool, ...], ...]:
        n = len(elements)
        return tuple(tuple(test(i, j) for j in range(n)) for i in range(n))

    return OrderRelations(
        elements,
        {
            "bruhat": matrix(lambda i, j: group.bruhat_leq(elements[i], elements[j])),
            "closure": matrix(lambda i, j: closure_leq(elements[i], elements[j], datum, config)),
            "dl_support": matrix(lambda i, j: dl_supports[i] <= dl_supports[j]),
            "sigma_support": matrix(lambda i, j: sigma_supports[i] <= sigma_supports[j]),
        },
    )


def audit_orders(datum: CoxeterDatum, config: Config = DEFAULT_CONFIG) -> list[tuple[int, int, dict[str, bool]]]:
    """Pairs on which the four orders disagree; empty when they coincide."""
    relations = order_relations(datum, config)
    findings = []
    n = len(relations.elements)
    for i in range(n):
        for j in range(n):
            values = {name: relations.matrices[name][i][j] for name in ORDER_NAMES}
            if len(set(values.values())) > 1:
                findings.append((i, j, values))
    if findings:
        logger.warning("order audit: %d disagreeing pairs", len(findings))
    return findings
