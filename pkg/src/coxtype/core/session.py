"""Session orchestrator: binds one datum to every computation and builds report records."""

import logging
from typing import Optional

from coxtype.config import DEFAULT_CONFIG, Config
from coxtype.core.admissible import adm, canonical_order, direct_equality, k_adm, k_adm_0, k_cox
from coxtype.core.classifier import AdmissibleTriple, ConditionResult, check_condition_3
from coxtype.core.dl_reduction import DimensionResult, ReductionNode, dim_X_mu_tau_K, lower_bound_witness
from coxtype.core.parser import render_datum
from coxtype.core.root_data import CoxeterDatum
from coxtype.core.smoothness import RULE_TEXT, StratumSmoothness, cell_smoothness, predicted_singular
from coxtype.core.strata import audit_orders, strata_poset
from coxtype.core.weyl import WeylElement, group_for
from coxtype.exceptions import BudgetExceededError
from coxtype.models import (
    AdmReport,
    CheckReport,
    ConditionReport,
    DimensionReport,
    ElementDimension,
    ElementRecord,
    MoveRecord,
    PosetReport,
    RuleRecord,
    SmoothnessReport,
    StratumRecord,
    StratumVerdict,
    TripleRecord,
)
from coxtype.utils.notation import format_word

logger = logging.getLogger(__name__)

ADM_LEVELS = ("adm", "k", "0", "cox")


class Session:
    """Runs the computations for a single Coxeter datum."""

    def __init__(self, datum: CoxeterDatum, config: Config = DEFAULT_CONFIG):
        self.datum = datum
        self.config = config
        self.group = group_for(datum.affine_type)
        self.label = render_datum(datum)

    # -- records ------------------------------------------------------------------

    def element_record(self, w: WeylElement) -> ElementRecord:
        letters, omega = self.group.reduced_word(w)
        label = self.group.omega_label(omega)
        return ElementRecord(
            word=list(letters), omega=label, text=format_word(letters, label, self.group.rd)
        )

    def _triple_record(self, triple: AdmissibleTriple) -> TripleRecord:
        return TripleRecord(
            xi=list(triple.xi), J=sorted(triple.J), K=sorted(triple.K), K_xi=sorted(triple.K_xi)
        )

    def _condition_record(self, result: ConditionResult) -> ConditionReport:
        return ConditionReport(
            passed=result.passed,
            lhs=result.lhs,
            rank_ss_G=result.rank_ss_G,
            rank_ss_J=result.rank_ss_J,
            failed=result.failed.value if result.failed else None,
            witness=self._triple_record(result.witness) if result.witness else None,
            factor=result.factor,
        )

    def _dimension_record(self, node: ReductionNode, witness: bool) -> ElementDimension:
        moves = [MoveRecord(s=m.node, kind=m.kind.value) for m in node.witness] if witness else []
        return ElementDimension(element=self.element_record(node.element), dim=node.dim, witness=moves)

    # -- reports -----------------------------------------------------------------

    def adm(self, level: str = "adm") -> AdmReport:
        """``Adm(mu)``, ``^K Adm(mu)``, ``^K Adm(mu)_0`` or ``^K Cox(mu)``."""
        producers = {"adm": adm, "k": k_adm, "0": k_adm_0, "cox": k_cox}
        if level not in producers:
            raise ValueError(f"unknown level {level!r}; expected one of {ADM_LEVELS}")
        elements = canonical_order(self.group, producers[level](self.datum, self.config))
        logger.debug("%s level %s: %d elements", self.label, level, len(elements))
        return AdmReport(
            datum=self.label, level=level, elements=[self.element_record(w) for w in elements]
        )

    def condition(self) -> ConditionReport:
        return self._condition_record(check_condition_3(self.datum))

    def dimension(self, per_element: bool = False, witness: bool = False) -> DimensionReport:
        result = dim_X_mu_tau_K(self.datum, self.config)
        bound = lower_bound_witness(self.datum, self.config)
        return DimensionReport(
            datum=self.label,
            dimension=result.dimension,
            exact=result.exact,
            rank_ss_J=result.rank,
            equals_rank=result.equals_rank,
            elements=[self._dimension_record(n, witness) for n in result.elements] if per_element else [],
            lower_bound_witness=self.element_record(bound) if bound is not None else None,
        )

    def check(self) -> CheckReport:
        """Evaluate the three characterizations and flag disagreements as defects.

        The inequality ledger needs no enumeration and is always reported. When
        ``<mu, 2rho>`` is over the admissible-set budget, the direct equality and the
        dimension are left unknown.
        """
        condition = check_condition_3(self.datum)
        try:
            elements = canonical_order(self.group, k_adm_0(self.datum, self.config))
            direct: Optional[bool] = direct_equality(self.datum, self.config)
            dims: Optional[DimensionResult] = dim_X_mu_tau_K(self.datum, self.config)
        except BudgetExceededError as e:
            logger.info("%s: %s; reporting the inequalities only", self.label, e)
            elements, direct, dims = [], None, None

        condition_2 = dims.dimension == dims.rank if dims is not None and dims.exact else None
        if not condition.passed:
            condition_1: Optional[bool] = False
        else:
            condition_1 = direct

        defects = []
        if condition.passed and direct is False:
            defects.append("inequalities hold but ^K Cox(mu) != ^K Adm(mu)_0")
        if dims is not None:
            if condition.passed and condition_2 is False:
                defects.append(f"inequalities hold but dim = {dims.dimension} != rank {dims.rank}")
            if dims.dimension < dims.rank:
                defects.append(f"dimension {dims.dimension} below the lower bound {dims.rank}")
        for defect in defects:
            logger.warning("%s: %s", self.label, defect)

        return CheckReport(
            datum=self.label,
            direct_equality=direct,
            condition_1=condition_1,
            condition_2=condition_2,
            condition_3=self._condition_record(condition),
            dimension=dims.dimension if dims is not None else None,
            k_adm_0=[self.element_record(w) for w in elements],
            defects=defects,
        )

    def poset(self, audit: bool = False) -> PosetReport:
        poset = strata_poset(self.datum, self.config)
        strata = [
            StratumRecord(
                w=self.element_record(s.w),
                support=sorted(s.support),
                i_set=sorted(s.i_set),
                parahoric_type=sorted(s.parahoric_type),
                residual_diagram=s.residual_diagram,
                frobenius=list(s.frobenius.perm),
                dl_element=self.element_record(s.dl_element),
                dimension=s.dimension,
            )
            for s in poset.strata
        ]
        disagreements = len(audit_orders(self.datum, self.config)) if audit else 0
        return PosetReport(
            datum=self.label,
            coxeter_type=poset.coxeter_type,
            strata=strata,
            covers=[tuple(c) for c in poset.covers],
            order_disagreements=disagreements,
        )

    def _verdict(self, stratum: StratumSmoothness) -> StratumVerdict:
        return StratumVerdict(
            element=self.element_record(stratum.w),
            smooth=stratum.smooth,
            trace=[
                RuleRecord(
                    rule=step.rule.value,
                    description=RULE_TEXT[step.rule],
                    factor=sorted(step.factor),
                    smooth=step.smooth,
                )
                for step in stratum.trace
            ],
        )

    def smoothness(
        self, orientation: Optional[dict[int, str]] = None, per_stratum: bool = False
    ) -> list[SmoothnessReport]:
        """One report per orientation; every orientation when none is fixed."""
        reports = []
        for cell in cell_smoothness(self.datum, orientation, self.config):
            reports.append(
                SmoothnessReport(
                    datum=render_datum(cell.datum),
                    orientation={str(k): v for k, v in sorted(cell.orientation.items())},
                    all_smooth=cell.all_smooth,
                    predicted_singular=predicted_singular(cell.datum),
                    strata=[self._verdict(s) for s in cell.strata] if per_stratum else [],
                )
            )
        return reports


def poset_to_dot(report: PosetReport) -> str:
    """Hasse diagram of the closure order in Graphviz DOT."""
    lines = ["digraph strata {", "  rankdir=BT;"]
    for i, stratum in enumerate(report.strata):
        lines.append(f'  n{i} [label="{stratum.w.text}"];')
    for a, b in report.covers:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines)
