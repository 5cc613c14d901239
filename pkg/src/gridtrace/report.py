"""The analysis pipeline and its machine-readable report.

``run_analysis`` chains graph construction, discrete evaluation, bounding
evaluation and verification, and keeps every derived artifact; ``analyze``
condenses them into one report document covering each cell's content, value,
intervals, verification status and color.  A circular reference degrades the
report (statuses unchecked, cycle recorded) instead of aborting.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

from gridtrace._version import __version__
from gridtrace.evaluate import (
    BoundingEvaluation,
    DiscreteEvaluation,
    EvalError,
    ExpectedSheet,
    eval_bounding,
    eval_discrete,
)
from gridtrace.graph import CircularReference, DependencyGraph, build_graph
from gridtrace.grid import CellAddress, Formula, Number, Text, Workbook
from gridtrace.intervals import Interval
from gridtrace.verification import (
    STATUS_COLORS,
    MarkSheet,
    UNCHECKED,
    verify_workbook,
)

ENGINE_VERSION = __version__


@dataclass
class Analysis:
    """Everything derived from one (workbook, expected sheet) pair."""

    workbook: Workbook
    expected: ExpectedSheet
    graph: DependencyGraph | None
    values: dict[CellAddress, float]
    value_errors: dict[CellAddress, EvalError]
    bounding: dict[CellAddress, Interval]
    bounding_errors: dict[CellAddress, EvalError]
    marks: MarkSheet
    cycle: list[CellAddress] | None = None


def run_analysis(wb: Workbook, expected: ExpectedSheet) -> Analysis:
    try:
        graph = build_graph(wb)
    except CircularReference as exc:
        marks = {addr: UNCHECKED for addr, _ in wb.cells()}
        return Analysis(wb, expected, None, {}, {}, {}, {}, marks, cycle=exc.cycle)

    discrete: DiscreteEvaluation = eval_discrete(wb, graph)
    bounding: BoundingEvaluation = eval_bounding(wb, graph, expected, discrete.values)
    marks = verify_workbook(wb, graph, discrete.values, expected, bounding.intervals)
    return Analysis(
        wb,
        expected,
        graph,
        discrete.values,
        discrete.errors,
        bounding.intervals,
        bounding.errors,
        marks,
    )


@dataclass(frozen=True)
class CellRecord:
    address: CellAddress
    kind: str
    status: str
    reasons: tuple[str, ...]
    color: str
    formula: str | None = None
    text: str | None = None
    value: float | None = None
    expected: Interval | None = None
    bounding: Interval | None = None
    error: EvalError | None = None

    def to_dict(self) -> dict:
        record: dict = {
            "address": str(self.address),
            "kind": self.kind,
            "status": self.status,
            "reasons": list(self.reasons),
            "color": self.color,
        }
        if self.formula is not None:
            record["formula"] = self.formula
        if self.text is not None:
            record["text"] = self.text
        if self.value is not None:
            record["value"] = self.value
        if self.expected is not None:
            record["expected"] = [self.expected.lo, self.expected.hi]
        if self.bounding is not None:
            record["bounding"] = [self.bounding.lo, self.bounding.hi]
        if self.error is not None:
            record["error"] = self.error.to_dict()
        return record


@dataclass
class AnalysisReport:
    engine_version: str
    digest: str
    timestamp: str
    cells: list[CellRecord] = field(default_factory=list)
    graph_error: list[CellAddress] | None = None

    def to_dict(self) -> dict:
        doc: dict = {
            "engine_version": self.engine_version,
            "digest": self.digest,
            "timestamp": self.timestamp,
            "graph_error": (
                None
                if self.graph_error is None
                else {
                    "error": "circular_reference",
                    "cycle": [str(a) for a in self.graph_error],
                }
            ),
            "cells": [record.to_dict() for record in self.cells],
        }
        return doc

    def to_json(self, *, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def record_for(self, addr: CellAddress) -> CellRecord | None:
        for record in self.cells:
            if record.address == addr:
                return record
        return None


def workbook_digest(wb: Workbook) -> str:
    from gridtrace.io import workbook_to_document

    canonical = json.dumps(workbook_to_document(wb), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _content_fields(content) -> tuple[str, str | None, str | None]:
    if isinstance(content, Formula):
        return "formula", content.source_text, None
    if isinstance(content, Number):
        return "number", None, None
    if isinstance(content, Text):
        return "text", None, content.text
    return "empty", None, None


def build_report(analysis: Analysis, *, timestamp: str | None = None) -> AnalysisReport:
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat()

    addresses = (
        sorted(analysis.graph.nodes)
        if analysis.graph is not None
        else analysis.workbook.addresses()
    )
    records = []
    for addr in addresses:
        content = analysis.workbook.get(addr)
        kind, formula, text = _content_fields(content)
        status = analysis.marks.get(addr, UNCHECKED)
        error = analysis.value_errors.get(addr) or analysis.bounding_errors.get(addr)
        records.append(
            CellRecord(
                address=addr,
                kind=kind,
                status=status.state.value,
                reasons=tuple(sorted(r.value for r in status.reasons)),
                color=STATUS_COLORS[status.state],
                formula=formula,
                text=text,
                value=analysis.values.get(addr),
                expected=analysis.expected.get(addr),
                bounding=analysis.bounding.get(addr),
                error=error,
            )
        )

    return AnalysisReport(
        engine_version=ENGINE_VERSION,
        digest=workbook_digest(analysis.workbook),
        timestamp=timestamp,
        cells=records,
        graph_error=analysis.cycle,
    )


def analyze(
    wb: Workbook, expected: ExpectedSheet, *, timestamp: str | None = None
) -> AnalysisReport:
    """Full pipeline: graph, discrete sheet, bounding sheet, marks, report."""
    return build_report(run_analysis(wb, expected), timestamp=timestamp)
