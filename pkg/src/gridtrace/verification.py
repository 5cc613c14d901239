"""Three-way comparator: spreadsheet value vs. user expectation vs. bounding interval.

A cell without an attached interval is never checked.  An input cell with an
interval is checked for membership of its value.  A formula cell passes only
if its value lies in the expected interval (check V) and the expected
interval intersects the computed bounding interval (check R, the
reasonableness of the expectation); each failed check becomes a recorded
reason.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from gridtrace.evaluate import ExpectedSheet
from gridtrace.graph import DependencyGraph
from gridtrace.grid import CellAddress, CellContent, Formula, Text, Workbook
from gridtrace.intervals import Interval


class VerificationState(enum.Enum):
    SYMPTOM = "symptom"
    NO_SYMPTOM = "no_symptom"
    UNCHECKED = "unchecked"


class SymptomReason(enum.Enum):
    VALUE_OUTSIDE_EXPECTED = "value_outside_expected"
    EXPECTATION_UNREASONABLE = "expectation_unreasonable"
    INPUT_OUTSIDE_INTERVAL = "input_outside_interval"
    BOUNDING_ERROR = "bounding_error"


@dataclass(frozen=True)
class VerificationStatus:
    state: VerificationState
    reasons: frozenset[SymptomReason] = frozenset()

    @property
    def is_symptom(self) -> bool:
        return self.state is VerificationState.SYMPTOM


MarkSheet = dict[CellAddress, VerificationStatus]

UNCHECKED = VerificationStatus(VerificationState.UNCHECKED)
NO_SYMPTOM = VerificationStatus(VerificationState.NO_SYMPTOM)

STATUS_COLORS = {
    VerificationState.SYMPTOM: "red",
    VerificationState.NO_SYMPTOM: "yellow",
    VerificationState.UNCHECKED: "neutral",
}

# comparisons at binary/decimal boundaries must not flip on representation noise
MEMBERSHIP_EPS = 1e-9


def _tolerance(*endpoints: float) -> float:
    return MEMBERSHIP_EPS * max(1.0, *(abs(e) for e in endpoints))


def interval_contains(iv: Interval, value: float) -> bool:
    tol = _tolerance(iv.lo, iv.hi)
    return iv.lo - tol <= value <= iv.hi + tol


def intervals_intersect(a: Interval, b: Interval) -> bool:
    tol = _tolerance(a.lo, a.hi, b.lo, b.hi)
    return max(a.lo, b.lo) <= min(a.hi, b.hi) + tol


def _symptom(*reasons: SymptomReason) -> VerificationStatus:
    return VerificationStatus(VerificationState.SYMPTOM, frozenset(reasons))


def verify_cell(
    content: CellContent,
    value: float | None,
    expected: Interval | None,
    bounding: Interval | None,
) -> VerificationStatus:
    """Mark one cell.

    ``value`` is the cell's discrete value (None if it has none), ``bounding``
    the computed bounding interval (None for non-formula cells and for
    formula cells whose interval evaluation failed).
    """
    is_formula = isinstance(content, Formula)
    bounding_failed = is_formula and bounding is None

    if expected is None:
        if bounding_failed:
            return VerificationStatus(
                VerificationState.UNCHECKED, frozenset({SymptomReason.BOUNDING_ERROR})
            )
        return UNCHECKED

    if value is None:
        # no discrete value to compare (text cell, or evaluation failed)
        if bounding_failed:
            return VerificationStatus(
                VerificationState.UNCHECKED, frozenset({SymptomReason.BOUNDING_ERROR})
            )
        return UNCHECKED

    if not is_formula:
        if interval_contains(expected, value):
            return NO_SYMPTOM
        return _symptom(SymptomReason.INPUT_OUTSIDE_INTERVAL)

    value_ok = interval_contains(expected, value)
    if bounding_failed:
        if value_ok:
            return NO_SYMPTOM
        return _symptom(SymptomReason.VALUE_OUTSIDE_EXPECTED, SymptomReason.BOUNDING_ERROR)

    expectation_ok = intervals_intersect(expected, bounding)
    if value_ok and expectation_ok:
        return NO_SYMPTOM
    reasons = []
    if not value_ok:
        reasons.append(SymptomReason.VALUE_OUTSIDE_EXPECTED)
    if not expectation_ok:
        reasons.append(SymptomReason.EXPECTATION_UNREASONABLE)
    return _symptom(*reasons)


def verify_workbook(
    wb: Workbook,
    g: DependencyGraph,
    values: dict[CellAddress, float],
    expected: ExpectedSheet,
    bounding: dict[CellAddress, Interval],
) -> MarkSheet:
    """Mark every graph node (populated cells plus referenced empty cells)."""
    marks: MarkSheet = {}
    for addr in sorted(g.nodes):
        content = wb.get(addr)
        value = values.get(addr)
        if isinstance(content, Text):
            value = None
        marks[addr] = verify_cell(content, value, expected.get(addr), bounding.get(addr))
    return marks
