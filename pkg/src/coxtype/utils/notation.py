"""Human-readable words: ``s0 s[3,1] . tau1``.

Runs of at least three consecutive labels inside one component are contracted:
``s3 s2 s1`` becomes ``s[3,1]`` and ``s1 s2 s3`` becomes ``s[3,1]^-1``. Nodes of the
second, third, ... component of a product carry one, two, ... primes.
"""

from collections.abc import Sequence

from coxtype.core.root_data import RootData
from coxtype.core.weyl import AffineWeylGroup, WeylElement


def _primes(rd: RootData, node: int) -> str:
    return "'" * rd.node_component[node]


def node_name(rd: RootData, node: int) -> str:
    return f"s{rd.local_label(node)}{_primes(rd, node)}"


def _runs(letters: Sequence[int], rd: RootData) -> list[tuple[int, int, int]]:
    """Split into maximal runs ``(start, end, step)`` with step -1, 1 or 0."""
    runs = []
    i = 0
    while i < len(letters):
        best = (i, i, 0)
        for step in (-1, 1):
            j = i
            while (
                j + 1 < len(letters)
                and rd.node_component[letters[j + 1]] == rd.node_component[letters[i]]
                and letters[j + 1] - letters[j] == step
            ):
                j += 1
            if j - i > best[1] - best[0]:
                best = (i, j, step)
        runs.append(best)
        i = best[1] + 1
    return runs


def format_letters(letters: Sequence[int], rd: RootData) -> str:
    if not letters:
        return "1"
    tokens = []
    for start, end, step in _runs(letters, rd):
        if end - start < 2:
            tokens.extend(node_name(rd, s) for s in letters[start : end + 1])
            continue
        first, last = rd.local_label(letters[start]), rd.local_label(letters[end])
        primes = _primes(rd, letters[start])
        if step < 0:
            tokens.append(f"s[{first},{last}]{primes}")
        else:
            tokens.append(f"s[{last},{first}]{primes}^-1")
    return " ".join(tokens)


def is_trivial_omega(label: str) -> bool:
    return all(part == "1" for part in label.split(","))


def format_word(letters: Sequence[int], omega_label: str, rd: RootData) -> str:
    text = format_letters(letters, rd)
    if is_trivial_omega(omega_label):
        return text
    if not letters:
        return omega_label
    return f"{text} . {omega_label}"


def format_element(group: AffineWeylGroup, w: WeylElement) -> str:
    letters, omega = group.reduced_word(w)
    return format_word(letters, group.omega_label(omega), group.rd)
