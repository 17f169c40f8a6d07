"""Tests for smoothness of stratum closures."""

import pytest

from coxtype.core.admissible import basic_element, k_cox
from coxtype.core.root_data import LONG, SHORT
from coxtype.core.smoothness import (
    Rule,
    cell_smoothness,
    is_square_or_hook,
    orbit_closure_rows,
    orientations,
    partition_from_d,
    predicted_singular,
    schubert_case,
    stratum_smoothness,
    verify_closure_dimension,
)
from coxtype.core.weyl import group_for
from coxtype.exceptions import PreconditionError, UnsupportedCellError

ROWS_N4 = [
    ((1, 2, 3, 4), (0, 0, 0, 0), True),
    ((2, 3, 4, 9), (4, 1, 1, 1), True),
    ((3, 4, 8, 9), (4, 4, 2, 2), False),
    ((4, 7, 8, 9), (4, 4, 4, 3), False),
    ((6, 7, 8, 9), (4, 4, 4, 4), True),
]


class TestPartitions:
    """Tests for the type B minuscule partition criterion."""

    @pytest.mark.parametrize("d, partition, smooth", ROWS_N4)
    def test_rows(self, d, partition, smooth):
        assert partition_from_d(d) == partition
        assert is_square_or_hook(partition) == smooth

    @pytest.mark.parametrize("d", [(5,), (1, 1), (1, 3), (2, 4), ()])
    def test_invalid(self, d):
        with pytest.raises(PreconditionError):
            partition_from_d(d)

    def test_orbit_closure_rows(self):
        rows = orbit_closure_rows(4)
        assert rows == [(1, 2, 3, 4), (2, 3, 4, 9), (3, 4, 8, 9), (4, 7, 8, 9), (6, 7, 8, 9)]
        assert all(len(row) == 4 for row in rows)

    def test_squares_and_hooks(self):
        assert is_square_or_hook((2, 2))
        assert is_square_or_hook((3, 1, 1))
        assert not is_square_or_hook((3, 2))


class TestPrediction:
    """Tests for the closed-form singularity statement."""

    def test_c2_orientations(self, datum):
        d = datum("C2:id:mu=[1,0]:K={1}")
        assert predicted_singular(d)
        assert not predicted_singular(d, {0: SHORT, 2: SHORT})
        assert predicted_singular(d, {0: LONG, 2: SHORT})
        assert predicted_singular(d, {0: SHORT, 2: LONG})

    def test_grassmannian(self, datum):
        assert predicted_singular(datum("A3:id:mu=[1,0,1]:K={1,2,3}"))
        assert not predicted_singular(datum("A2:id:mu=[1,1]:K={1,2}"))

    def test_smooth_cells(self, a3_omega2, harris_taylor):
        assert not predicted_singular(a3_omega2)
        assert not predicted_singular(harris_taylor)


class TestOrientations:
    """Tests for orientation enumeration."""

    def test_all_assignments(self, siegel):
        assert len(orientations(siegel)) == 4

    def test_no_double_bond(self, a3_omega2):
        assert orientations(a3_omega2) == [{}]

    def test_fixed_orientation(self, datum):
        d = datum("C2:id:mu=[1,0]:K={1}:orient=0=short,2=short")
        assert orientations(d) == [{0: SHORT, 2: SHORT}]


class TestStrata:
    """Tests for per-stratum verdicts."""

    def test_low_dimension(self, a3_omega2):
        cells = cell_smoothness(a3_omega2)
        assert len(cells) == 1
        assert cells[0].all_smooth
        for stratum in cells[0].strata:
            assert stratum.trace[0].rule is Rule.DIMENSION

    def test_basic_element(self, siegel_twisted):
        tau = basic_element(siegel_twisted)
        result = stratum_smoothness(tau, siegel_twisted)
        assert result.smooth
        assert schubert_case(tau, siegel_twisted).length == 0

    def test_needs_coxeter_element(self, a3_omega2):
        group = group_for(a3_omega2.affine_type)
        with pytest.raises(PreconditionError):
            stratum_smoothness(group.from_word([0, 2], basic_element(a3_omega2)), a3_omega2)

    def test_unsupported_cell(self, siegel_rejected):
        with pytest.raises(UnsupportedCellError):
            cell_smoothness(siegel_rejected)

    def test_grassmannian_cell(self, datum):
        d = datum("A3:id:mu=[1,0,1]:K={1,2,3}")
        (cell,) = cell_smoothness(d)
        assert not cell.all_smooth
        rules = {step.rule for s in cell.strata for step in s.trace}
        assert Rule.GRASSMANNIAN in rules

    def test_c2_cell_follows_prediction(self, datum):
        d = datum("C2:id:mu=[1,0]:K={1}")
        cells = cell_smoothness(d)
        assert len(cells) == 4
        for cell in cells:
            assert cell.all_smooth == (not predicted_singular(d, cell.orientation))

    def test_closure_dimension(self, drinfeld):
        for w in k_cox(drinfeld):
            verify_closure_dimension(w, drinfeld)


@pytest.mark.slow
class TestGoldenCells:
    """The per-stratum rules agree with the closed statement on every golden cell up to rank 4."""

    def test_agreement(self, datum, golden_cell):
        d = datum(golden_cell)
        for cell in cell_smoothness(d):
            assert cell.all_smooth == (not predicted_singular(d, cell.orientation))
