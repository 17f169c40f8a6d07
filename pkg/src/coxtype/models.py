"""Report records for coxtype.

These pydantic models are the serialisation boundary of the package: the math
core works with frozen dataclasses, and ``core.session`` / ``core.tables`` turn
its results into these records for JSON and console output.
"""

from typing import Optional

from pydantic import BaseModel, Field


class ElementRecord(BaseModel):
    """An element ``s_{i1} ... s_{il} omega`` of the extended affine Weyl group."""

    word: list[int]
    omega: str
    text: str = Field(default="", description="Word in contracted notation.")


class MoveRecord(BaseModel):
    s: int
    kind: str


class ElementDimension(BaseModel):
    element: ElementRecord
    dim: Optional[int] = Field(default=None, description="None when X_w(tau) is empty.")
    witness: list[MoveRecord] = Field(default_factory=list)


class DimensionReport(BaseModel):
    datum: str
    dimension: int
    exact: bool
    rank_ss_J: int
    equals_rank: bool
    elements: list[ElementDimension] = Field(default_factory=list)
    lower_bound_witness: Optional[ElementRecord] = None


class TripleRecord(BaseModel):
    xi: list[int]
    J: list[int]
    K: list[int]
    K_xi: list[int]


class ConditionReport(BaseModel):
    """Outcome of the inequality test."""

    passed: bool
    lhs: int
    rank_ss_G: int
    rank_ss_J: int
    failed: Optional[str] = None
    witness: Optional[TripleRecord] = None
    factor: Optional[int] = None


class AdmReport(BaseModel):
    datum: str
    level: str
    elements: list[ElementRecord]


class CheckReport(BaseModel):
    """The three equivalent characterizations of Coxeter type, evaluated side by side."""

    datum: str
    direct_equality: Optional[bool] = Field(
        default=None, description="None when the admissible set is over budget."
    )
    condition_1: Optional[bool] = None
    condition_2: Optional[bool] = Field(
        default=None, description="None when only a lower bound for the dimension is known."
    )
    condition_3: ConditionReport
    dimension: Optional[int] = None
    k_adm_0: list[ElementRecord] = Field(default_factory=list)
    defects: list[str] = Field(default_factory=list)

    @property
    def has_defects(self) -> bool:
        return bool(self.defects)


class StratumRecord(BaseModel):
    w: ElementRecord
    support: list[int]
    i_set: list[int]
    parahoric_type: list[int]
    residual_diagram: str
    frobenius: list[int]
    dl_element: ElementRecord
    dimension: int


class PosetReport(BaseModel):
    datum: str
    coxeter_type: bool
    strata: list[StratumRecord]
    covers: list[tuple[int, int]]
    order_disagreements: int = 0


class RuleRecord(BaseModel):
    rule: str
    description: str
    factor: list[int]
    smooth: bool


class StratumVerdict(BaseModel):
    element: ElementRecord
    smooth: bool
    trace: list[RuleRecord]


class SmoothnessReport(BaseModel):
    datum: str
    orientation: dict[str, str]
    all_smooth: bool
    predicted_singular: bool
    strata: list[StratumVerdict] = Field(default_factory=list)


class TableRow(BaseModel):
    """One row of the classification table."""

    datum: str
    rank_ss_J: Optional[int] = None
    k_adm_0: list[str] = Field(default_factory=list)


class Table2Row(BaseModel):
    template: str
    datum: str
    sigma_orbits: list[list[int]]
    twisted_orbits: list[list[int]]
    expected_sigma_orbits: list[list[int]]
    expected_twisted_orbits: list[list[int]]

    @property
    def matches(self) -> bool:
        return (
            self.sigma_orbits == self.expected_sigma_orbits
            and self.twisted_orbits == self.expected_twisted_orbits
        )


class TableDiff(BaseModel):
    missing: list[str] = Field(default_factory=list)
    extra: list[str] = Field(default_factory=list)
    duplicates: list[str] = Field(
        default_factory=list, description="Rows isomorphic to an earlier row of the same table."
    )

    @property
    def is_empty(self) -> bool:
        return not self.missing and not self.extra and not self.duplicates
