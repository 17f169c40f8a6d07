"""Classification table regeneration and the sigma-orbit listings per case.

``table1_rows`` runs the sweep and ``diff_table1`` compares it with the
checked-in golden rows up to isomorphism. ``table2_rows`` instantiates each
orbit template for every admissible rank and carries the closed-form answer
next to the computed one.
"""

import json
import logging
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from coxtype.config import DEFAULT_CONFIG, Config
from coxtype.core.admissible import basic_element, canonical_order, k_adm_0, twisted_perm
from coxtype.core.classifier import canonical_form, classify_sweep, rank_ss_J_tau
from coxtype.core.parser import parse_datum, render_datum
from coxtype.core.weyl import group_for
from coxtype.models import Table2Row, TableDiff, TableRow
from coxtype.utils.notation import format_element

logger = logging.getLogger(__name__)

Orbits = list[list[int]]


# -- table 1 ------------------------------------------------------------------------------


def table1_rows(max_rank: int, config: Config = DEFAULT_CONFIG) -> list[TableRow]:
    rows = []
    for datum in classify_sweep(max_rank, config):
        group = group_for(datum.affine_type)
        rows.append(
            TableRow(
                datum=render_datum(datum),
                rank_ss_J=rank_ss_J_tau(datum),
                k_adm_0=[format_element(group, w) for w in canonical_order(group, k_adm_0(datum, config))],
            )
        )
    return rows


def load_golden(path: Optional[Path] = None) -> list[TableRow]:
    """Golden table rows from ``path`` or from the packaged ``table1.json``."""
    if path is None:
        text = resources.files("coxtype.data").joinpath("table1.json").read_text()
    else:
        text = path.read_text()
    return [TableRow(**entry) for entry in json.loads(text)]


def golden_rows(max_rank: int, golden: Optional[list[TableRow]] = None) -> list[TableRow]:
    """Golden rows whose datum has rank at most ``max_rank``."""
    rows = load_golden() if golden is None else golden
    return [row for row in rows if parse_datum(row.datum).rank <= max_rank]


def diff_table1(rows: list[TableRow], golden: list[TableRow], max_rank: int) -> TableDiff:
    """Rows missing from or extra to the golden table, compared up to isomorphism.

    Rows isomorphic to an earlier row of the same table are listed as duplicates.
    """
    duplicates: list[str] = []

    def keyed(data: list[str]) -> dict[tuple, str]:
        table: dict[tuple, str] = {}
        for text in data:
            key = canonical_form(parse_datum(text))
            if key in table:
                logger.warning("%s duplicates %s up to isomorphism", text, table[key])
                duplicates.append(text)
            else:
                table[key] = text
        return table

    computed = keyed([r.datum for r in rows])
    expected = keyed([r.datum for r in golden_rows(max_rank, golden)])
    diff = TableDiff(
        missing=sorted(expected[k] for k in expected.keys() - computed.keys()),
        extra=sorted(computed[k] for k in computed.keys() - expected.keys()),
        duplicates=sorted(duplicates),
    )
    if not diff.is_empty:
        logger.warning(
            "table differs from golden: %d missing, %d extra, %d duplicates",
            len(diff.missing),
            len(diff.extra),
            len(diff.duplicates),
        )
    return diff


# -- table 2 ------------------------------------------------------------------------------


def _singletons(count: int) -> Orbits:
    return [[i] for i in range(count)]


def _pairs(count: int, pair: Callable[[int], int]) -> Orbits:
    """Orbits of an involution ``i -> pair(i) mod count``."""
    seen: set[int] = set()
    orbits = []
    for i in range(count):
        if i in seen:
            continue
        orbit = sorted({i, pair(i) % count})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


@dataclass(frozen=True)
class Table2Template:
    """A family of rows indexed by rank, with its closed-form orbit listings."""

    name: str
    ranks: Callable[[int], Iterator[int]]
    datum: Callable[[int], str]
    sigma_orbits: Callable[[int], Orbits]
    twisted_orbits: Callable[[int], Orbits]


def _mu(r: int, *ones: int) -> str:
    coeffs = ["0"] * r
    for i in ones:
        coeffs[i - 1] = "1"
    return "[" + ",".join(coeffs) + "]"


def _between(low: int, step: int = 1) -> Callable[[int], Iterator[int]]:
    return lambda max_rank: iter(range(low, max_rank + 1, step))


def _fixed(rank: int) -> Callable[[int], Iterator[int]]:
    return lambda max_rank: iter([rank] if rank <= max_rank else [])


def _product_orbits(r: int, shift: int) -> Orbits:
    n = r + 1
    return sorted([[i, n + (i + shift) % n] for i in range(n)])


TABLE2_TEMPLATES: tuple[Table2Template, ...] = (
    Table2Template(
        "A_{n-1}, id, omega_1",
        _between(1),
        lambda r: f"A{r}:id:mu={_mu(r, 1)}:K={{}}",
        lambda r: _singletons(r + 1),
        lambda r: [list(range(r + 1))],
    ),
    Table2Template(
        "A_{n-1}, rho_{n-1}, omega_1",
        _between(1),
        lambda r: f"A{r}:rho{r}:mu={_mu(r, 1)}:K={{}}",
        lambda r: [list(range(r + 1))],
        lambda r: _singletons(r + 1),
    ),
    Table2Template(
        "A_{2m}, varsigma_0, omega_1",
        _between(2, 2),
        lambda r: f"A{r}:varsigma0:mu={_mu(r, 1)}:K={{}}",
        lambda r: _pairs(r + 1, lambda i: -i),
        lambda r: _pairs(r + 1, lambda i: 1 - i),
    ),
    Table2Template(
        "A_{2m+1}, varsigma_0, omega_1",
        _between(3, 2),
        lambda r: f"A{r}:varsigma0:mu={_mu(r, 1)}:K={{}}",
        lambda r: _pairs(r + 1, lambda i: -i),
        lambda r: _pairs(r + 1, lambda i: 1 - i),
    ),
    Table2Template(
        "A_{2m+1}, rho_{n-1} o varsigma_0, omega_1",
        _between(3, 2),
        lambda r: f"A{r}:rho{r}*varsigma0:mu={_mu(r, 1)}:K={{}}",
        lambda r: _pairs(r + 1, lambda i: -i - 1),
        lambda r: _pairs(r + 1, lambda i: -i),
    ),
    Table2Template(
        "A_{n-1}, id, omega_1 + omega_{n-1}",
        _between(2),
        lambda r: f"A{r}:id:mu={_mu(r, 1, r)}:K={{}}",
        lambda r: _singletons(r + 1),
        lambda r: _singletons(r + 1),
    ),
    Table2Template(
        "A_{n-1} x A_{n-1}, swap, (omega_1, omega_{n-1})",
        lambda max_rank: iter(range(1, max_rank // 2 + 1)),
        lambda r: f"A{r}xA{r}:swap:mu={_mu(r, 1)};{_mu(r, r)}:K={{}};{{}}",
        lambda r: _product_orbits(r, 0),
        lambda r: _product_orbits(r, -1),
    ),
    Table2Template(
        "A_1, id, 2 omega_1",
        _fixed(1),
        lambda r: "A1:id:mu=[2]:K={}",
        lambda r: [[0], [1]],
        lambda r: [[0], [1]],
    ),
    Table2Template(
        "A_3, id, omega_2",
        _fixed(3),
        lambda r: "A3:id:mu=[0,1,0]:K={}",
        lambda r: _singletons(4),
        lambda r: [[0, 2], [1, 3]],
    ),
    Table2Template(
        "A_3, varsigma_0, omega_2",
        _fixed(3),
        lambda r: "A3:varsigma0:mu=[0,1,0]:K={}",
        lambda r: [[0], [1, 3], [2]],
        lambda r: [[0, 2], [1], [3]],
    ),
    Table2Template(
        "A_3, rho_1, omega_2",
        _fixed(3),
        lambda r: "A3:rho1:mu=[0,1,0]:K={}",
        lambda r: [[0, 1, 2, 3]],
        lambda r: [[0, 1, 2, 3]],
    ),
    Table2Template(
        "B_n, id, omega_1",
        _between(3),
        lambda r: f"B{r}:id:mu={_mu(r, 1)}:K={{}}",
        lambda r: _singletons(r + 1),
        lambda r: [[0, 1]] + [[i] for i in range(2, r + 1)],
    ),
    Table2Template(
        "B_n, Ad(tau_1), omega_1",
        _between(3),
        lambda r: f"B{r}:Ad(tau1):mu={_mu(r, 1)}:K={{}}",
        lambda r: [[0, 1]] + [[i] for i in range(2, r + 1)],
        lambda r: _singletons(r + 1),
    ),
    Table2Template(
        "C_n, id, omega_1",
        _between(2),
        lambda r: f"C{r}:id:mu={_mu(r, 1)}:K={{}}",
        lambda r: _singletons(r + 1),
        lambda r: _singletons(r + 1),
    ),
    Table2Template(
        "C_2, id, omega_2",
        _fixed(2),
        lambda r: "C2:id:mu=[0,1]:K={}",
        lambda r: _singletons(3),
        lambda r: [[0, 2], [1]],
    ),
    Table2Template(
        "C_2, Ad(tau_2), omega_2",
        _fixed(2),
        lambda r: "C2:Ad(tau2):mu=[0,1]:K={}",
        lambda r: [[0, 2], [1]],
        lambda r: _singletons(3),
    ),
    Table2Template(
        "D_n, id, omega_1",
        _between(4),
        lambda r: f"D{r}:id:mu={_mu(r, 1)}:K={{}}",
        lambda r: _singletons(r + 1),
        lambda r: [[0, 1]] + [[i] for i in range(2, r - 1)] + [[r - 1, r]],
    ),
    Table2Template(
        "D_n, varsigma_0, omega_1",
        _between(4),
        lambda r: f"D{r}:varsigma0:mu={_mu(r, 1)}:K={{}}",
        lambda r: [[i] for i in range(r - 1)] + [[r - 1, r]],
        lambda r: [[0, 1]] + [[i] for i in range(2, r + 1)],
    ),
)


def _listing(orbits: list) -> Orbits:
    return sorted(sorted(o) for o in orbits)


def table2_rows(max_rank: int) -> list[Table2Row]:
    """Every template instantiated at ranks up to ``max_rank``."""
    rows = []
    for template in TABLE2_TEMPLATES:
        for r in template.ranks(max_rank):
            datum = parse_datum(template.datum(r))
            twisted = twisted_perm(datum, basic_element(datum))
            row = Table2Row(
                template=template.name,
                datum=render_datum(datum),
                sigma_orbits=_listing(datum.sigma.orbits()),
                twisted_orbits=_listing(twisted.orbits()),
                expected_sigma_orbits=_listing(template.sigma_orbits(r)),
                expected_twisted_orbits=_listing(template.twisted_orbits(r)),
            )
            if not row.matches:
                logger.warning("orbit listing for %s differs from %s", row.datum, template.name)
            rows.append(row)
    return rows


def write_tables(out_dir: Path, max_rank: int, config: Config = DEFAULT_CONFIG) -> tuple[TableDiff, list[Table2Row]]:
    """Write ``table1.json`` and ``table2.json`` to ``out_dir`` and diff table 1 against the golden rows."""
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = table1_rows(max_rank, config)
    listing = table2_rows(max_rank)
    (out_dir / "table1.json").write_text(
        json.dumps([r.model_dump() for r in rows], indent=2, sort_keys=True) + "\n"
    )
    (out_dir / "table2.json").write_text(
        json.dumps([r.model_dump() for r in listing], indent=2, sort_keys=True) + "\n"
    )
    return diff_table1(rows, load_golden(), max_rank), listing
