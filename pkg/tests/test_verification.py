from hypothesis import given, strategies as st

from gridtrace.formulas import parse_formula
from gridtrace.grid import Formula, Number, Text, parse_address
from gridtrace.intervals import Interval
from gridtrace.verification import (
    STATUS_COLORS,
    SymptomReason,
    VerificationState,
    interval_contains,
    intervals_intersect,
    verify_cell,
    verify_workbook,
)

A = parse_address

FORMULA = Formula(parse_formula("=A1*2"), "=A1*2")


def states(marks):
    return {str(addr): status.state for addr, status in marks.items()}


class TestVerifyCell:
    def test_unchecked_without_interval(self):
        status = verify_cell(Number(5.0), 5.0, None, None)
        assert status.state is VerificationState.UNCHECKED
        assert not status.reasons

    def test_input_inside(self):
        status = verify_cell(Number(8.25), 8.25, Interval(8, 9), None)
        assert status.state is VerificationState.NO_SYMPTOM

    def test_input_outside(self):
        status = verify_cell(Number(20.0), 20.0, Interval(8, 9), None)
        assert status.state is VerificationState.SYMPTOM
        assert status.reasons == {SymptomReason.INPUT_OUTSIDE_INTERVAL}

    def test_formula_both_checks_fail(self):
        # the scaled row: value far below expectation and bounding disjoint from it
        status = verify_cell(
            FORMULA, 1482.421875, Interval(8500, 8780), Interval(1437.5, 1527.34375)
        )
        assert status.state is VerificationState.SYMPTOM
        assert status.reasons == {
            SymptomReason.VALUE_OUTSIDE_EXPECTED,
            SymptomReason.EXPECTATION_UNREASONABLE,
        }

    def test_formula_no_symptom(self):
        status = verify_cell(FORMULA, 4125.0, Interval(4000, 4250), Interval(4125, 4125))
        assert status.state is VerificationState.NO_SYMPTOM

    def test_formula_value_check_alone_fails(self):
        # degenerate expectation inside the bounding interval: reasonable but missed
        status = verify_cell(
            FORMULA, 6302.30712890625, Interval(24000, 24000), Interval(22500, 25030)
        )
        assert status.reasons == {SymptomReason.VALUE_OUTSIDE_EXPECTED}

    def test_formula_reasonableness_alone_fails(self):
        status = verify_cell(FORMULA, 5.0, Interval(4, 6), Interval(100, 200))
        assert status.reasons == {SymptomReason.EXPECTATION_UNREASONABLE}

    def test_bounding_failure_with_expected_falls_back_to_value_check(self):
        ok = verify_cell(FORMULA, 5.0, Interval(4, 6), None)
        assert ok.state is VerificationState.NO_SYMPTOM
        bad = verify_cell(FORMULA, 50.0, Interval(4, 6), None)
        assert bad.reasons == {
            SymptomReason.VALUE_OUTSIDE_EXPECTED,
            SymptomReason.BOUNDING_ERROR,
        }

    def test_bounding_failure_without_expected_stays_unchecked(self):
        status = verify_cell(FORMULA, 5.0, None, None)
        assert status.state is VerificationState.UNCHECKED
        assert status.reasons == {SymptomReason.BOUNDING_ERROR}

    def test_text_cell_with_interval_unchecked(self):
        status = verify_cell(Text("note"), None, Interval(0, 1), None)
        assert status.state is VerificationState.UNCHECKED

    def test_membership_tolerance_absorbs_representation_noise(self):
        value = 0.1 + 0.2  # 0.30000000000000004
        assert interval_contains(Interval(0.0, 0.3), value)
        assert not interval_contains(Interval(0.0, 0.3), 0.300001)

    def test_intersection_tolerance(self):
        assert intervals_intersect(Interval(0, 1), Interval(1 + 1e-12, 2))
        assert not intervals_intersect(Interval(0, 1), Interval(1.001, 2))

    @given(
        st.floats(min_value=-1e6, max_value=1e6),
        st.floats(min_value=0, max_value=100),
        st.floats(min_value=0, max_value=1),
    )
    def test_expected_inside_bounding_and_value_inside_expected_is_clean(self, lo, w, t):
        expected = Interval(lo, lo + w)
        bounding = Interval(lo - 1, lo + w + 1)
        value = lo + t * w
        status = verify_cell(FORMULA, value, expected, bounding)
        assert status.state is VerificationState.NO_SYMPTOM


class TestVerifyWorkbook:
    def test_fixture_marks(self, fig2_analysis):
        marks = fig2_analysis.marks
        symptoms = {str(a) for a, s in marks.items() if s.state is VerificationState.SYMPTOM}
        clean = {str(a) for a, s in marks.items() if s.state is VerificationState.NO_SYMPTOM}
        assert symptoms == {"D6", "D7", "D9"}
        assert clean == {"D5"}
        for addr, status in marks.items():
            if str(addr) not in symptoms | clean:
                assert status.state is VerificationState.UNCHECKED

    def test_query_cell_reason_is_value_only(self, fig2_analysis):
        status = fig2_analysis.marks[A("D9")]
        assert status.reasons == {SymptomReason.VALUE_OUTSIDE_EXPECTED}

    def test_no_intervals_all_unchecked(self, fig2_workbook):
        from gridtrace import run_analysis

        analysis = run_analysis(fig2_workbook, {})
        assert all(
            s.state is VerificationState.UNCHECKED for s in analysis.marks.values()
        )

    def test_deterministic(self, fig2_workbook, fig2_intervals, fig2_analysis):
        again = verify_workbook(
            fig2_analysis.workbook,
            fig2_analysis.graph,
            fig2_analysis.values,
            fig2_analysis.expected,
            fig2_analysis.bounding,
        )
        assert again == fig2_analysis.marks

    def test_removing_interval_only_moves_that_cell_to_unchecked(self, fig2_analysis):
        trimmed = dict(fig2_analysis.expected)
        del trimmed[A("D6")]
        # at a fixed bounding sheet, only the detached cell may change
        marks = verify_workbook(
            fig2_analysis.workbook,
            fig2_analysis.graph,
            fig2_analysis.values,
            trimmed,
            fig2_analysis.bounding,
        )
        assert marks[A("D6")].state is VerificationState.UNCHECKED
        for addr, status in fig2_analysis.marks.items():
            if addr != A("D6"):
                assert marks[addr] == status

    def test_empty_referenced_cell_with_interval_checked_as_input(self):
        from gridtrace import build_graph, eval_bounding, eval_discrete
        from gridtrace.grid import Workbook

        wb = Workbook()
        wb.set(A("B1"), Formula(parse_formula("=A1+1"), "=A1+1"))
        g = build_graph(wb)
        values = eval_discrete(wb, g).values
        expected = {A("A1"): Interval(5, 6)}
        bounding = eval_bounding(wb, g, expected, values).intervals
        marks = verify_workbook(wb, g, values, expected, bounding)
        assert marks[A("A1")].state is VerificationState.SYMPTOM
        assert marks[A("A1")].reasons == {SymptomReason.INPUT_OUTSIDE_INTERVAL}


def test_status_color_mapping():
    assert STATUS_COLORS[VerificationState.SYMPTOM] == "red"
    assert STATUS_COLORS[VerificationState.NO_SYMPTOM] == "yellow"
    assert STATUS_COLORS[VerificationState.UNCHECKED] == "neutral"
