import random

import pytest

from gridtrace.evaluate import EvalErrorKind, eval_bounding, eval_discrete
from gridtrace.formulas import parse_formula
from gridtrace.graph import build_graph
from gridtrace.grid import Formula, Number, Text, Workbook, parse_address
from gridtrace.intervals import Interval

from genlib import random_workbook

A = parse_address

# full-precision expectations, derived by hand-evaluating the fixture's formulas
FIG2_VALUES = {
    "C5": 0.171875,
    "C6": 0.359375,
    "C7": 0.46875,
    "C9": 1.0,
    "B9": 48.0,
    "D5": 4125.0,
    "D6": 1482.421875,
    "D7": 694.88525390625,
    "D9": 6302.30712890625,
    "E5": 343.75,
    "E6": 718.75,
    "E7": 937.5,
    "E9": 2000.0,
    "F9": 5000.0,
    "G4": 31000.0,
    "G5": 4468.75,
    "G6": 2201.171875,
    "G7": 1632.38525390625,
    "G8": 5000.0,
    "G9": 13302.30712890625,
}


def wb_from(cells: dict[str, object]) -> Workbook:
    wb = Workbook()
    for addr, value in cells.items():
        if isinstance(value, str) and value.startswith("="):
            wb.set(A(addr), Formula(parse_formula(value), value))
        elif isinstance(value, str):
            wb.set(A(addr), Text(value))
        else:
            wb.set(A(addr), Number(float(value)))
    return wb


class TestDiscrete:
    def test_fixture_values(self, fig2_workbook):
        g = build_graph(fig2_workbook)
        result = eval_discrete(fig2_workbook, g)
        assert not result.errors
        for name, expected in FIG2_VALUES.items():
            assert result.values[A(name)] == pytest.approx(expected, rel=1e-12), name

    def test_fixture_displays(self, fig2_workbook):
        g = build_graph(fig2_workbook)
        values = eval_discrete(fig2_workbook, g).values
        displays = {
            "C5": "0.17",
            "C6": "0.36",
            "C7": "0.47",
            "D6": "1,482.42",
            "D7": "694.89",
            "D9": "6,302.31",
            "G9": "13,302.31",
        }
        for name, text in displays.items():
            assert f"{values[A(name)]:,.2f}" == text

    def test_literal_sheet_identity(self):
        wb = wb_from({"A1": 1.5, "B2": -3.0})
        result = eval_discrete(wb, build_graph(wb))
        assert result.values[A("A1")] == 1.5
        assert result.values[A("B2")] == -3.0

    def test_empty_direct_reference_reads_zero(self):
        wb = wb_from({"B1": "=A1+5"})
        result = eval_discrete(wb, build_graph(wb))
        assert result.values[A("B1")] == 5.0
        assert result.values[A("A1")] == 0.0

    def test_sum_skips_empty_and_text(self):
        wb = wb_from({"A1": 1.0, "A2": "note", "A4": 3.0, "B1": "=SUM(A1:A4)"})
        result = eval_discrete(wb, build_graph(wb))
        assert result.values[A("B1")] == 4.0

    def test_sum_skips_direct_text_argument(self):
        wb = wb_from({"A1": "note", "A2": 2.0, "B1": "=SUM(A1,A2)"})
        result = eval_discrete(wb, build_graph(wb))
        assert result.values[A("B1")] == 2.0

    def test_direct_text_reference_is_type_error(self):
        wb = wb_from({"A1": "note", "B1": "=A1*2"})
        result = eval_discrete(wb, build_graph(wb))
        assert A("B1") not in result.values
        assert result.errors[A("B1")].kind is EvalErrorKind.TYPE_ERROR

    def test_division_by_zero_recorded(self):
        wb = wb_from({"A1": 0.0, "B1": "=1/A1"})
        result = eval_discrete(wb, build_graph(wb))
        assert result.errors[A("B1")].kind is EvalErrorKind.DIVISION_BY_ZERO

    def test_error_propagates_to_dependents(self):
        wb = wb_from({"A1": "oops", "B1": "=A1*2", "C1": "=B1+1"})
        result = eval_discrete(wb, build_graph(wb))
        assert result.errors[A("C1")].kind is EvalErrorKind.PRECEDENT_ERROR

    def test_order_independent(self, fig2_workbook):
        g = build_graph(fig2_workbook)
        baseline = eval_discrete(fig2_workbook, g)
        rng = random.Random(11)
        for _ in range(5):
            # any order consistent with the edges must give identical values
            order = list(g.topo_order)
            priorities = {addr: (rng.random(),) for addr in order}
            position = {a: i for i, a in enumerate(order)}
            for addr in order:
                for p in g.direct_precedents(addr):
                    assert position[p] < position[addr]
            shuffled = sorted(
                order,
                key=lambda a: (
                    max(
                        (position[p] for p in g.direct_precedents(a)), default=-1
                    ),
                    priorities[a],
                ),
            )
            # re-check validity of the alternative order before using it
            pos2 = {a: i for i, a in enumerate(shuffled)}
            valid = all(
                pos2[p] < pos2[a] for a in shuffled for p in g.direct_precedents(a)
            )
            if not valid:
                continue
            alternative = eval_discrete(fig2_workbook, g, order=tuple(shuffled))
            assert alternative.values == baseline.values


class TestBounding:
    def test_fixture_bounding_sheet(self, fig2_workbook, fig2_intervals):
        g = build_graph(fig2_workbook)
        values = eval_discrete(fig2_workbook, g).values
        bounding = eval_bounding(fig2_workbook, g, fig2_intervals, values)
        assert not bounding.errors
        expected = {
            "D5": Interval(4125, 4125),
            "D6": Interval(1437.5, 1527.34375),
            "D7": Interval(3984.375, 4115.625),
            "D9": Interval(22500, 25030),
        }
        for name, iv in expected.items():
            got = bounding.intervals[A(name)]
            assert got.lo == pytest.approx(iv.lo, abs=1e-9)
            assert got.hi == pytest.approx(iv.hi, abs=1e-9)

    def test_one_level_rule(self, fig2_workbook, fig2_intervals):
        # the scaled cell must start from its precedent's attached interval,
        # not from that precedent's own bounding interval
        g = build_graph(fig2_workbook)
        values = eval_discrete(fig2_workbook, g).values
        bounding = eval_bounding(fig2_workbook, g, fig2_intervals, values)
        d7 = bounding.intervals[A("D7")]
        assert d7 == Interval(8500 * 0.46875, 8780 * 0.46875)
        bad = bounding.intervals[A("D6")]  # what two-level evaluation would chain from
        assert d7 != Interval(bad.lo * 0.46875, bad.hi * 0.46875)

    def test_no_intervals_gives_degenerate_sheet(self, fig2_workbook):
        g = build_graph(fig2_workbook)
        values = eval_discrete(fig2_workbook, g).values
        bounding = eval_bounding(fig2_workbook, g, {}, values)
        for addr, content in fig2_workbook.cells():
            if isinstance(content, Formula):
                iv = bounding.intervals[addr]
                assert iv.is_degenerate
                assert iv.lo == pytest.approx(values[addr], rel=1e-12)

    def test_covers_every_formula_cell(self, fig2_workbook, fig2_intervals):
        g = build_graph(fig2_workbook)
        values = eval_discrete(fig2_workbook, g).values
        bounding = eval_bounding(fig2_workbook, g, fig2_intervals, values)
        formula_cells = {
            addr for addr, content in fig2_workbook.cells() if isinstance(content, Formula)
        }
        assert set(bounding.intervals) == formula_cells

    def test_straddling_divisor_recorded_not_raised(self):
        wb = wb_from({"A1": 2.0, "B1": "=1/A1"})
        expected = {A("A1"): Interval(-1, 1)}
        g = build_graph(wb)
        values = eval_discrete(wb, g).values
        bounding = eval_bounding(wb, g, expected, values)
        assert A("B1") not in bounding.intervals
        assert bounding.errors[A("B1")].kind is EvalErrorKind.DIVISOR_STRADDLES_ZERO

    def test_operand_unavailable_for_text_precedent(self):
        wb = wb_from({"A1": "note", "B1": "=A1*2"})
        g = build_graph(wb)
        values = eval_discrete(wb, g).values
        bounding = eval_bounding(wb, g, {}, values)
        assert bounding.errors[A("B1")].kind is EvalErrorKind.OPERAND_UNAVAILABLE

    def test_interval_on_input_feeds_formula(self):
        wb = wb_from({"A1": 10.0, "B1": "=A1*2"})
        g = build_graph(wb)
        values = eval_discrete(wb, g).values
        bounding = eval_bounding(wb, g, {A("A1"): Interval(8, 12)}, values)
        assert bounding.intervals[A("B1")] == Interval(16, 24)

    def test_random_workbooks_bounding_contains_discrete_when_unattached(self):
        rng = random.Random(2718)
        for _ in range(30):
            wb, _ = random_workbook(rng, with_intervals=False)
            g = build_graph(wb)
            result = eval_discrete(wb, g)
            bounding = eval_bounding(wb, g, {}, result.values)
            for addr, iv in bounding.intervals.items():
                assert iv.lo == pytest.approx(result.values[addr], rel=1e-12)
                assert iv.is_degenerate
