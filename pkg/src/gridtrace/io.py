"""Workbook and interval file formats.

A workbook is a JSON document ``{"cells": {"A1": {"text": ...} | {"number":
...} | {"formula": "=..."}}}``; intervals are ``{"D5": [4000, 4250]}``.
Loading validates every entry and fails atomically with the full list of
problems, so one pass over the error message fixes the file.
"""

from __future__ import annotations

import json
from math import isfinite
from pathlib import Path

from gridtrace.formulas import FormulaSyntaxError, RangeOutsideAggregate, parse_formula
from gridtrace.grid import (
    CellAddress,
    Formula,
    MalformedAddress,
    Number,
    Text,
    Workbook,
    parse_address,
)
from gridtrace.intervals import Interval

_CELL_KEYS = {"text", "number", "formula"}


class FormatError(ValueError):
    """One or more invalid entries in an input document."""

    def __init__(self, problems: list[tuple[str | None, str]]) -> None:
        lines = [f"{cell or '<document>'}: {detail}" for cell, detail in problems]
        super().__init__("invalid document:\n  " + "\n  ".join(lines))
        self.problems = problems


class InvalidInterval(ValueError):
    def __init__(self, address: str, detail: str) -> None:
        super().__init__(f"{address}: {detail}")
        self.address = address


def _is_real(value: object) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def workbook_from_document(doc: object) -> Workbook:
    if not isinstance(doc, dict) or not isinstance(doc.get("cells"), dict):
        raise FormatError([(None, 'expected an object with a "cells" object')])

    problems: list[tuple[str | None, str]] = []
    cells: dict[CellAddress, object] = {}
    for key in sorted(doc["cells"]):
        entry = doc["cells"][key]
        try:
            addr = parse_address(key)
        except MalformedAddress as exc:
            problems.append((key, str(exc)))
            continue
        if not isinstance(entry, dict) or len(set(entry) & _CELL_KEYS) != 1 or len(entry) != 1:
            problems.append((key, 'expected exactly one of "text", "number", "formula"'))
            continue
        if "text" in entry:
            if not isinstance(entry["text"], str):
                problems.append((key, "text must be a string"))
                continue
            cells[addr] = Text(entry["text"])
        elif "number" in entry:
            if not _is_real(entry["number"]) or not isfinite(entry["number"]):
                problems.append((key, "number must be a finite real"))
                continue
            cells[addr] = Number(float(entry["number"]))
        else:
            if not isinstance(entry["formula"], str):
                problems.append((key, "formula must be a string"))
                continue
            try:
                ast = parse_formula(entry["formula"])
            except (FormulaSyntaxError, RangeOutsideAggregate) as exc:
                problems.append((key, str(exc)))
                continue
            cells[addr] = Formula(ast, entry["formula"])

    if problems:
        raise FormatError(problems)
    return Workbook(cells)  # type: ignore[arg-type]


def workbook_to_document(wb: Workbook) -> dict:
    cells: dict[str, dict] = {}
    for addr, content in wb.cells():
        if isinstance(content, Text):
            cells[str(addr)] = {"text": content.text}
        elif isinstance(content, Number):
            cells[str(addr)] = {"number": content.value}
        elif isinstance(content, Formula):
            cells[str(addr)] = {"formula": content.source_text}
    return {"cells": cells}


def load_workbook(path: str | Path) -> Workbook:
    """Load and fully validate a workbook file.

    Raises:
        FileNotFoundError, FormatError
    """
    raw = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise FormatError([(None, f"not valid JSON: {exc}")]) from exc
    return workbook_from_document(doc)


def intervals_from_document(doc: object) -> dict[CellAddress, Interval]:
    if not isinstance(doc, dict):
        raise FormatError([(None, "expected an object mapping addresses to [lo, hi] pairs")])

    problems: list[tuple[str | None, str]] = []
    parsed: list[tuple[CellAddress, str, object]] = []
    for key in sorted(doc):
        try:
            addr = parse_address(key)
        except MalformedAddress as exc:
            problems.append((key, str(exc)))
            continue
        entry = doc[key]
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(_is_real(v) and isfinite(v) for v in entry)
        ):
            problems.append((key, "expected a [lo, hi] pair of finite numbers"))
            continue
        parsed.append((addr, key, entry))
    if problems:
        raise FormatError(problems)

    sheet: dict[CellAddress, Interval] = {}
    for addr, key, entry in sorted(parsed, key=lambda item: item[0]):
        lo, hi = float(entry[0]), float(entry[1])
        if lo > hi:
            raise InvalidInterval(key, f"lower bound {lo} exceeds upper bound {hi}")
        sheet[addr] = Interval(lo, hi)
    return sheet


def intervals_to_document(sheet: dict[CellAddress, Interval]) -> dict:
    return {str(addr): [iv.lo, iv.hi] for addr, iv in sorted(sheet.items())}


def load_intervals(path: str | Path) -> dict[CellAddress, Interval]:
    """Load a sparse expected-interval sheet.

    Raises:
        FileNotFoundError, FormatError, InvalidInterval
    """
    raw = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise FormatError([(None, f"not valid JSON: {exc}")]) from exc
    return intervals_from_document(doc)
