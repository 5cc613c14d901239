"""Interval-based spreadsheet testing and fault tracing.

The package evaluates a workbook twice -- once with ordinary real arithmetic
and once under interval arithmetic driven by user-attached expected
intervals -- marks every cell whose value, expectation and bounding interval
disagree, and walks the dependency graph to locate the most influential
faulty cell behind a marked cell.
"""

from gridtrace._version import __version__
from gridtrace.evaluate import (
    BoundingEvaluation,
    DiscreteEvaluation,
    EvalError,
    EvalErrorKind,
    ExpectedSheet,
    eval_bounding,
    eval_discrete,
)
from gridtrace.formulas import (
    Binary,
    BinaryOp,
    Call,
    CellRef,
    FormulaAst,
    FormulaSyntaxError,
    NumberLit,
    RangeOutsideAggregate,
    RangeRef,
    Unary,
    UnaryOp,
    parse_formula,
    print_formula,
    referenced_cells,
)
from gridtrace.graph import CircularReference, DependencyGraph, build_graph
from gridtrace.grid import (
    CellAddress,
    CellContent,
    EMPTY,
    Empty,
    Formula,
    MalformedAddress,
    Number,
    Text,
    Workbook,
    format_address,
    parse_address,
)
from gridtrace.intervals import (
    DivisorStraddlesZero,
    Interval,
    IntervalOverflow,
    format_interval,
    interval_add,
    interval_div,
    interval_mul,
    interval_neg,
    interval_sub,
    interval_sum,
)
from gridtrace.io import (
    FormatError,
    InvalidInterval,
    load_intervals,
    load_workbook,
    workbook_from_document,
    workbook_to_document,
)
from gridtrace.report import Analysis, AnalysisReport, analyze, build_report, run_analysis
from gridtrace.trace import (
    QueryNotFaulty,
    TraceResult,
    TraceStep,
    faulty_direct_dependents,
    faulty_direct_precedents,
    trace_most_influential,
)
from gridtrace.verification import (
    MarkSheet,
    STATUS_COLORS,
    SymptomReason,
    VerificationState,
    VerificationStatus,
    verify_cell,
    verify_workbook,
)

__all__ = [
    "__version__",
    "Analysis",
    "AnalysisReport",
    "Binary",
    "BinaryOp",
    "BoundingEvaluation",
    "Call",
    "CellAddress",
    "CellContent",
    "CellRef",
    "CircularReference",
    "DependencyGraph",
    "DiscreteEvaluation",
    "DivisorStraddlesZero",
    "EMPTY",
    "Empty",
    "EvalError",
    "EvalErrorKind",
    "ExpectedSheet",
    "Formula",
    "FormulaAst",
    "FormulaSyntaxError",
    "FormatError",
    "Interval",
    "IntervalOverflow",
    "InvalidInterval",
    "MalformedAddress",
    "MarkSheet",
    "Number",
    "NumberLit",
    "QueryNotFaulty",
    "RangeOutsideAggregate",
    "RangeRef",
    "STATUS_COLORS",
    "SymptomReason",
    "Text",
    "TraceResult",
    "TraceStep",
    "Unary",
    "UnaryOp",
    "VerificationState",
    "VerificationStatus",
    "Workbook",
    "analyze",
    "build_graph",
    "build_report",
    "eval_bounding",
    "eval_discrete",
    "faulty_direct_dependents",
    "faulty_direct_precedents",
    "format_address",
    "format_interval",
    "interval_add",
    "interval_div",
    "interval_mul",
    "interval_neg",
    "interval_sub",
    "interval_sum",
    "load_intervals",
    "load_workbook",
    "parse_address",
    "parse_formula",
    "print_formula",
    "referenced_cells",
    "run_analysis",
    "trace_most_influential",
    "verify_cell",
    "verify_workbook",
    "workbook_from_document",
    "workbook_to_document",
]
