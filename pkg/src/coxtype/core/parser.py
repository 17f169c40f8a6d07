"""Parser and renderer for the Coxeter datum grammar.

    TYPE[xTYPE...]:SIGMA:mu=[..][;[..]...]:K={..}[;{..}...][:orient=NODE=long|short,...]

Node labels are local Bourbaki labels per component; on products an orientation
node is written ``j.i`` (component ``j``, label ``i``). ``B2`` is accepted and
relabelled to ``C2``.
"""

import re
from typing import Optional

from coxtype.core.root_data import (
    LONG,
    SHORT,
    AffineType,
    ComponentType,
    Coweight,
    CoxeterDatum,
    RootData,
    describe_automorphism,
    named_automorphism,
    root_data_for,
)
from coxtype.exceptions import ParseError, SemanticError

# B2 node i corresponds to C2 node _B2_TO_C2[i]
_B2_TO_C2 = {0: 0, 1: 2, 2: 1}

_TYPE_RE = re.compile(r"[A-Ga-g]\d+")


class _Cursor:
    """Splits the datum text into its colon-separated fields, tracking offsets."""

    def __init__(self, text: str):
        self.text = text
        self.fields: list[tuple[str, int]] = []
        start = 0
        depth = 0
        for i, ch in enumerate(text):
            if ch in "([{":
                depth += 1
            elif ch in ")]}":
                depth -= 1
                if depth < 0:
                    raise ParseError(f"unbalanced {ch!r}", i)
            elif ch == ":" and depth == 0:
                self.fields.append((text[start:i], start))
                start = i + 1
        if depth != 0:
            raise ParseError("unbalanced brackets", len(text))
        self.fields.append((text[start:], start))


def _int_list(body: str, offset: int) -> list[int]:
    body = body.strip()
    if not body:
        return []
    out = []
    for part in body.split(","):
        try:
            out.append(int(part))
        except ValueError as e:
            raise ParseError(f"expected an integer, got {part.strip()!r}", offset) from e
    return out


def _bracketed(field: str, offset: int, prefix: str, open_: str, close: str) -> list[list[int]]:
    """Parse ``prefix`` followed by ``;``-separated bracketed integer lists."""
    if not field.startswith(prefix):
        raise ParseError(f"expected {prefix!r}", offset)
    groups = []
    pos = len(prefix)
    for chunk in field[len(prefix) :].split(";"):
        stripped = chunk.strip()
        if not (stripped.startswith(open_) and stripped.endswith(close)):
            raise ParseError(f"expected {open_}...{close}", offset + pos)
        groups.append(_int_list(stripped[1:-1], offset + pos + 1))
        pos += len(chunk) + 1
    return groups


def _relabel_sigma(text: str, b2_components: set[int], single: bool) -> str:
    if not b2_components:
        return text
    if not single:
        raise SemanticError("B2 labels in products must be written as C2", "component-type")
    return re.sub(r"tau([12])", lambda m: f"tau{_B2_TO_C2[int(m.group(1))]}", text)


def _orientation(
    field: str, offset: int, rd: RootData, b2_components: set[int]
) -> tuple[tuple[int, str], ...]:
    prefix = "orient="
    if not field.startswith(prefix):
        raise ParseError(f"unknown field {field!r}", offset)
    return _orientation_entries(field[len(prefix) :], offset + len(prefix), rd, b2_components)


def _orientation_entries(
    body: str, offset: int, rd: RootData, b2_components: set[int]
) -> tuple[tuple[int, str], ...]:
    entries = []
    for chunk in body.split(","):
        node_text, sep, value = chunk.strip().partition("=")
        if not sep or value not in (LONG, SHORT):
            raise ParseError(f"bad orientation entry {chunk.strip()!r}", offset)
        try:
            if "." in node_text:
                j_text, _, i_text = node_text.partition(".")
                j, i = int(j_text), int(i_text)
            else:
                j, i = 0, int(node_text)
        except ValueError as e:
            raise ParseError(f"bad orientation node {node_text!r}", offset) from e
        if j in b2_components:
            i = _B2_TO_C2.get(i, i)
        if not 0 <= j < rd.component_count:
            raise SemanticError(f"orientation node {node_text} does not exist", "orientation-keys")
        node = rd.global_node(j, i)
        entries.append((node, value))
    return tuple(sorted(entries))


def parse_datum(text: str) -> CoxeterDatum:
    """Parse one datum.

    Raises:
        ParseError: On malformed text, with the character position.
        SemanticError: If the datum violates an invariant.
    """
    cursor = _Cursor(text.strip())
    fields = cursor.fields
    if len(fields) not in (4, 5):
        raise ParseError(f"expected 4 or 5 ':'-separated fields, got {len(fields)}", 0)

    (type_text, type_pos), (sigma_text, sigma_pos), (mu_text, mu_pos), (k_text, k_pos) = fields[:4]
    labels = type_text.strip().split("x")
    for label in labels:
        if not _TYPE_RE.fullmatch(label):
            raise ParseError(f"bad component type {label!r}", type_pos)
    b2_components = {j for j, label in enumerate(labels) if label.upper() == "B2"}
    affine_type = AffineType(tuple(ComponentType.from_label(label) for label in labels))
    rd = root_data_for(affine_type)

    sigma_text = _relabel_sigma(sigma_text.strip(), b2_components, len(labels) == 1)
    if not sigma_text:
        raise ParseError("empty automorphism", sigma_pos)
    sigma = named_automorphism(sigma_text, affine_type)

    mu_groups = _bracketed(mu_text.strip(), mu_pos, "mu=", "[", "]")
    k_groups = _bracketed(k_text.strip(), k_pos, "K=", "{", "}")
    if len(mu_groups) != len(labels):
        raise SemanticError(f"mu needs one list per component, got {len(mu_groups)}", "mu-components")
    if len(k_groups) == 1 and len(labels) > 1 and not k_groups[0]:
        k_groups = [[] for _ in labels]
    if len(k_groups) != len(labels):
        raise SemanticError(f"K needs one set per component, got {len(k_groups)}", "K-components")

    mu: list[int] = []
    K: set[int] = set()
    for j, (coeffs, nodes) in enumerate(zip(mu_groups, k_groups)):
        ctype = affine_type.components[j]
        if len(coeffs) != ctype.rank:
            raise SemanticError(
                f"mu for component {j} needs {ctype.rank} entries, got {len(coeffs)}", "mu-integral"
            )
        if j in b2_components:
            coeffs = [coeffs[1], coeffs[0]]
            nodes = [_B2_TO_C2.get(i, i) for i in nodes]
        mu.extend(coeffs)
        for i in nodes:
            if not 0 <= i <= ctype.rank:
                raise SemanticError(f"node {i} does not exist in {ctype.label}", "K-nodes")
            K.add(rd.global_node(j, i))

    orientation: Optional[tuple[tuple[int, str], ...]] = None
    if len(fields) == 5:
        orient_text, orient_pos = fields[4]
        orientation = _orientation(orient_text.strip(), orient_pos, rd, b2_components)

    return CoxeterDatum(affine_type, sigma, Coweight.of(mu), frozenset(K), orientation)


def _node_text(rd: RootData, node: int) -> str:
    label = str(rd.local_label(node))
    if rd.component_count > 1:
        return f"{rd.node_component[node]}.{label}"
    return label


def render_datum(datum: CoxeterDatum) -> str:
    """Inverse of :func:`parse_datum`."""
    rd = datum.root_data
    sigma = datum.sigma if datum.sigma.name else describe_automorphism(datum.sigma.perm, datum.affine_type)
    mu_parts = []
    k_parts = []
    for j in range(rd.component_count):
        coeffs = [int(datum.mu.coords[x]) for x in rd.component_coords(j)]
        mu_parts.append("[" + ",".join(map(str, coeffs)) + "]")
        labels = sorted(rd.local_label(s) for s in datum.K if rd.node_component[s] == j)
        k_parts.append("{" + ",".join(map(str, labels)) + "}")
    text = f"{datum.affine_type.label}:{sigma}:mu={';'.join(mu_parts)}:K={';'.join(k_parts)}"
    if datum.orientation:
        entries = ",".join(f"{_node_text(rd, s)}={v}" for s, v in sorted(datum.orientation))
        text += f":orient={entries}"
    return text


def parse_orientation(text: str, datum: CoxeterDatum) -> dict[int, str]:
    """Parse ``NODE=long|short,...`` against the nodes of ``datum``.

    Raises:
        ParseError: On a malformed entry.
        SemanticError: If a node does not exist.
    """
    return dict(_orientation_entries(text.strip(), 0, datum.root_data, set()))
