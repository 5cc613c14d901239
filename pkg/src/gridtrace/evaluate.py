"""Discrete and interval evaluation of the sheet.

Discrete evaluation walks formula cells in topological order with real
arithmetic.  Bounding evaluation re-runs each formula under interval
arithmetic, one level deep: every referenced cell contributes its attached
expected interval if it has one, otherwise its discrete value promoted to a
width-zero interval.  Evaluation failures are recorded per cell instead of
aborting the sheet.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isfinite

from gridtrace.formulas import (
    Binary,
    BinaryOp,
    Call,
    CellRef,
    FormulaAst,
    NumberLit,
    RangeRef,
    Unary,
    iter_range,
)
from gridtrace.graph import DependencyGraph
from gridtrace.grid import CellAddress, Empty, Formula, Number, Text, Workbook
from gridtrace.intervals import (
    DivisorStraddlesZero,
    Interval,
    IntervalOverflow,
    interval_add,
    interval_div,
    interval_mul,
    interval_neg,
    interval_sub,
    interval_sum,
)

ExpectedSheet = dict[CellAddress, Interval]


class EvalErrorKind(enum.Enum):
    TYPE_ERROR = "type_error"
    DIVISION_BY_ZERO = "division_by_zero"
    DIVISOR_STRADDLES_ZERO = "divisor_straddles_zero"
    OVERFLOW = "overflow"
    PRECEDENT_ERROR = "precedent_error"
    OPERAND_UNAVAILABLE = "operand_unavailable"


@dataclass(frozen=True)
class EvalError:
    kind: EvalErrorKind
    cell: CellAddress
    detail: str

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "detail": self.detail}


class _Abort(Exception):
    def __init__(self, kind: EvalErrorKind, detail: str) -> None:
        self.kind = kind
        self.detail = detail


@dataclass
class DiscreteEvaluation:
    """Computed values of the ordinary sheet plus per-cell failures.

    ``values`` covers number cells, referenced empty cells (as 0.0) and every
    formula cell that evaluated; text cells and failed cells are absent.
    """

    values: dict[CellAddress, float]
    errors: dict[CellAddress, EvalError]


@dataclass
class BoundingEvaluation:
    """Bounding intervals for formula cells; failed cells carry an error."""

    intervals: dict[CellAddress, Interval]
    errors: dict[CellAddress, EvalError]


def _check_finite(value: float) -> float:
    if not isfinite(value):
        raise _Abort(EvalErrorKind.OVERFLOW, "result left the finite double range")
    return value


def eval_discrete(
    wb: Workbook,
    g: DependencyGraph,
    order: tuple[CellAddress, ...] | None = None,
) -> DiscreteEvaluation:
    """Evaluate every formula cell with real arithmetic.

    Direct references read empty cells as 0 and fail on text cells; SUM
    skips empty and text members.  ``order`` may supply an alternative
    topological order (any valid one yields identical values).
    """
    values: dict[CellAddress, float] = {}
    errors: dict[CellAddress, EvalError] = {}

    for addr in g.nodes:
        content = wb.get(addr)
        if isinstance(content, Number):
            values[addr] = content.value
        elif isinstance(content, Empty):
            values[addr] = 0.0

    def ref_value(ref: CellAddress) -> float:
        content = wb.get(ref)
        if isinstance(content, Text):
            raise _Abort(EvalErrorKind.TYPE_ERROR, f"{ref} contains text")
        if isinstance(content, Formula) and ref not in values:
            raise _Abort(EvalErrorKind.PRECEDENT_ERROR, f"{ref} failed to evaluate")
        return values.get(ref, 0.0)

    def is_skipped(ref: CellAddress) -> bool:
        return isinstance(wb.get(ref), (Empty, Text))

    def ev(node: FormulaAst) -> float:
        if isinstance(node, NumberLit):
            return node.value
        if isinstance(node, CellRef):
            return ref_value(node.addr.without_flags())
        if isinstance(node, Unary):
            return _check_finite(-ev(node.operand))
        if isinstance(node, Binary):
            left = ev(node.left)
            right = ev(node.right)
            if node.op is BinaryOp.ADD:
                return _check_finite(left + right)
            if node.op is BinaryOp.SUB:
                return _check_finite(left - right)
            if node.op is BinaryOp.MUL:
                return _check_finite(left * right)
            if right == 0.0:
                raise _Abort(EvalErrorKind.DIVISION_BY_ZERO, "division by zero")
            return _check_finite(left / right)
        if isinstance(node, Call):
            total = 0.0
            for arg in node.args:
                if isinstance(arg, CellRef):
                    ref = arg.addr.without_flags()
                    if not is_skipped(ref):
                        total += ref_value(ref)
                elif isinstance(arg, RangeRef):
                    for ref in iter_range(arg.start, arg.end):
                        if not is_skipped(ref):
                            total += ref_value(ref)
                else:
                    total += ev(arg)
            return _check_finite(total)
        raise TypeError(f"not an AST node: {node!r}")

    for addr in order if order is not None else g.topo_order:
        content = wb.get(addr)
        if not isinstance(content, Formula):
            continue
        try:
            values[addr] = ev(content.ast)
        except _Abort as abort:
            errors[addr] = EvalError(abort.kind, addr, abort.detail)

    return DiscreteEvaluation(values, errors)


def eval_bounding(
    wb: Workbook,
    g: DependencyGraph,
    expected: ExpectedSheet,
    values: dict[CellAddress, float],
) -> BoundingEvaluation:
    """Evaluate every formula cell under interval arithmetic, one level deep.

    Operands come from precedents' expected intervals or width-zero
    promotions of their discrete values -- never from precedents' bounding
    intervals.
    """
    intervals: dict[CellAddress, Interval] = {}
    errors: dict[CellAddress, EvalError] = {}

    def operand(ref: CellAddress) -> Interval:
        attached = expected.get(ref)
        if attached is not None:
            return attached
        if ref in values:
            return Interval.degenerate(values[ref])
        raise _Abort(
            EvalErrorKind.OPERAND_UNAVAILABLE,
            f"{ref} has neither an attached interval nor a discrete value",
        )

    def is_skipped(ref: CellAddress) -> bool:
        return isinstance(wb.get(ref), (Empty, Text))

    def ev(node: FormulaAst) -> Interval:
        if isinstance(node, NumberLit):
            return Interval.degenerate(node.value)
        if isinstance(node, CellRef):
            return operand(node.addr.without_flags())
        if isinstance(node, Unary):
            return interval_neg(ev(node.operand))
        if isinstance(node, Binary):
            left = ev(node.left)
            right = ev(node.right)
            if node.op is BinaryOp.ADD:
                return interval_add(left, right)
            if node.op is BinaryOp.SUB:
                return interval_sub(left, right)
            if node.op is BinaryOp.MUL:
                return interval_mul(left, right)
            return interval_div(left, right)
        if isinstance(node, Call):
            members: list[Interval] = []
            for arg in node.args:
                if isinstance(arg, CellRef):
                    ref = arg.addr.without_flags()
                    if not is_skipped(ref):
                        members.append(operand(ref))
                elif isinstance(arg, RangeRef):
                    for ref in iter_range(arg.start, arg.end):
                        if not is_skipped(ref):
                            members.append(operand(ref))
                else:
                    members.append(ev(arg))
            return interval_sum(members)
        raise TypeError(f"not an AST node: {node!r}")

    for addr, content in wb.cells():
        if not isinstance(content, Formula):
            continue
        try:
            intervals[addr] = ev(content.ast)
        except _Abort as abort:
            errors[addr] = EvalError(abort.kind, addr, abort.detail)
        except DivisorStraddlesZero as exc:
            errors[addr] = EvalError(EvalErrorKind.DIVISOR_STRADDLES_ZERO, addr, str(exc))
        except IntervalOverflow as exc:
            errors[addr] = EvalError(EvalErrorKind.OVERFLOW, addr, str(exc))

    return BoundingEvaluation(intervals, errors)
