"""Tests for report records."""

import json

from coxtype.models import (
    CheckReport,
    ConditionReport,
    ElementRecord,
    Table2Row,
    TableDiff,
    TableRow,
)


class TestElementRecord:
    """Tests for ElementRecord."""

    def test_defaults(self):
        record = ElementRecord(word=[0, 2], omega="tau2")
        assert record.text == ""

    def test_json(self):
        record = ElementRecord(word=[1], omega="1", text="s1")
        assert json.loads(record.model_dump_json()) == {"word": [1], "omega": "1", "text": "s1"}


class TestCheckReport:
    """Tests for CheckReport."""

    def _report(self, defects):
        condition = ConditionReport(passed=True, lhs=2, rank_ss_G=1, rank_ss_J=1)
        return CheckReport(
            datum="A1:id:mu=[2]:K={}",
            direct_equality=True,
            condition_1=True,
            condition_2=True,
            condition_3=condition,
            dimension=1,
            defects=defects,
        )

    def test_clean(self):
        assert not self._report([]).has_defects

    def test_defects(self):
        assert self._report(["dimension below rank"]).has_defects

    def test_condition_2_defaults_to_unknown(self):
        condition = ConditionReport(passed=False, lhs=3, rank_ss_G=1, rank_ss_J=2, failed="a")
        report = CheckReport(
            datum="C2:Ad(tau2):mu=[0,1]:K={1}",
            direct_equality=False,
            condition_1=False,
            condition_3=condition,
            dimension=2,
        )
        assert report.condition_2 is None
        assert report.model_dump(mode="json")["condition_3"]["failed"] == "a"


class TestTables:
    """Tests for table records."""

    def test_row_defaults(self):
        row = TableRow(datum="A1:id:mu=[1]:K={}")
        assert row.rank_ss_J is None
        assert row.k_adm_0 == []

    def test_diff_empty(self):
        assert TableDiff().is_empty
        assert not TableDiff(missing=["A1:id:mu=[1]:K={}"]).is_empty
        assert not TableDiff(extra=["A1:id:mu=[2]:K={}"]).is_empty

    def test_table2_matches(self):
        row = Table2Row(
            template="A_{2m}, varsigma_0, omega_1",
            datum="A2:varsigma0:mu=[1,0]:K={}",
            sigma_orbits=[[0], [1, 2]],
            twisted_orbits=[[0, 1], [2]],
            expected_sigma_orbits=[[0], [1, 2]],
            expected_twisted_orbits=[[0, 1], [2]],
        )
        assert row.matches
        assert not row.model_copy(update={"twisted_orbits": [[0], [1], [2]]}).matches
