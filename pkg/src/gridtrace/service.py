"""HTTP endpoints driving the grid debugger UI.

One workbook per process.  Mutations are serialized and atomic: the new
analysis is derived before the session state is swapped, so readers always
see a report that matches the current workbook and interval sheet.  Every
successful mutation bumps the revision counter by one.
"""

from __future__ import annotations

import threading
from typing import Any

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from gridtrace.evaluate import ExpectedSheet
from gridtrace.formulas import FormulaSyntaxError, RangeOutsideAggregate, parse_formula
from gridtrace.grid import (
    CellAddress,
    EMPTY,
    Formula,
    MalformedAddress,
    Number,
    Text,
    Workbook,
    parse_address,
)
from gridtrace.intervals import Interval
from gridtrace.io import workbook_to_document
from gridtrace.report import Analysis, build_report, run_analysis
from gridtrace.trace import QueryNotFaulty, trace_most_influential


class ApiError(Exception):
    def __init__(self, status_code: int, error: str, detail: str, cell: str | None = None):
        self.status_code = status_code
        self.error = error
        self.detail = detail
        self.cell = cell


class SessionState:
    """The single debugging session: inputs plus derived artifacts."""

    def __init__(self, workbook: Workbook, expected: ExpectedSheet) -> None:
        self._lock = threading.Lock()
        self.workbook = workbook
        self.expected: ExpectedSheet = dict(expected)
        self.revision = 0
        self.analysis: Analysis = run_analysis(self.workbook, self.expected)
        self.analyzed_at = _now()

    def snapshot(self) -> tuple[Analysis, int, str]:
        with self._lock:
            return self.analysis, self.revision, self.analyzed_at

    def mutate_cell(self, addr: CellAddress, content) -> None:
        with self._lock:
            workbook = self.workbook.copy()
            workbook.set(addr, content)
            self._commit(workbook, self.expected)

    def put_interval(self, addr: CellAddress, interval: Interval) -> None:
        with self._lock:
            expected = dict(self.expected)
            expected[addr.without_flags()] = interval
            self._commit(self.workbook, expected)

    def delete_interval(self, addr: CellAddress) -> None:
        with self._lock:
            expected = dict(self.expected)
            expected.pop(addr.without_flags(), None)
            self._commit(self.workbook, expected)

    def _commit(self, workbook: Workbook, expected: ExpectedSheet) -> None:
        analysis = run_analysis(workbook, expected)
        self.workbook = workbook
        self.expected = expected
        self.analysis = analysis
        self.analyzed_at = _now()
        self.revision += 1


def _now() -> str:
    from datetime import datetime, timezone

    return datetime.now(timezone.utc).isoformat()


def _parse_path_address(raw: str) -> CellAddress:
    try:
        return parse_address(raw).without_flags()
    except MalformedAddress as exc:
        raise ApiError(400, "malformed_address", str(exc), cell=raw)


def _cell_content_from_body(addr: str, body: Any):
    if not isinstance(body, dict):
        raise ApiError(400, "format_error", "expected a JSON object", cell=addr)
    keys = set(body) & {"formula", "number", "text", "clear"}
    if len(keys) != 1 or len(body) != 1:
        raise ApiError(
            400,
            "format_error",
            'expected exactly one of "formula", "number", "text", "clear"',
            cell=addr,
        )
    if "clear" in body:
        if body["clear"] is not True:
            raise ApiError(400, "format_error", '"clear" must be true', cell=addr)
        return EMPTY
    if "text" in body:
        if not isinstance(body["text"], str):
            raise ApiError(400, "format_error", "text must be a string", cell=addr)
        return Text(body["text"])
    if "number" in body:
        value = body["number"]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ApiError(400, "format_error", "number must be a finite real", cell=addr)
        try:
            return Number(float(value))
        except ValueError as exc:
            raise ApiError(400, "format_error", str(exc), cell=addr)
    source = body["formula"]
    if not isinstance(source, str):
        raise ApiError(400, "format_error", "formula must be a string", cell=addr)
    try:
        return Formula(parse_formula(source), source)
    except (FormulaSyntaxError, RangeOutsideAggregate) as exc:
        raise ApiError(400, "format_error", str(exc), cell=addr)


def create_app(session: SessionState) -> FastAPI:
    app = FastAPI(title="gridtrace", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        body: dict = {"error": exc.error, "detail": exc.detail}
        if exc.cell is not None:
            body["cell"] = exc.cell
        return JSONResponse(status_code=exc.status_code, content=body)

    def _report_body() -> dict:
        analysis, revision, analyzed_at = session.snapshot()
        doc = build_report(analysis, timestamp=analyzed_at).to_dict()
        doc["revision"] = revision
        return doc

    @app.get("/api/report")
    async def get_report() -> dict:
        return _report_body()

    @app.get("/api/workbook")
    async def get_workbook() -> dict:
        analysis, _, _ = session.snapshot()
        return workbook_to_document(analysis.workbook)

    @app.get("/api/trace/{addr}")
    async def get_trace(addr: str) -> dict:
        address = _parse_path_address(addr)
        analysis, revision, _ = session.snapshot()
        if analysis.graph is None:
            raise ApiError(409, "graph_error", "workbook has a circular reference")
        if address not in analysis.graph:
            raise ApiError(404, "unknown_cell", f"{address} is not part of the sheet", cell=str(address))
        try:
            result = trace_most_influential(analysis.graph, analysis.marks, address)
        except QueryNotFaulty as exc:
            raise ApiError(409, "query_not_faulty", str(exc), cell=str(address))
        doc = result.to_dict()
        doc["revision"] = revision
        return doc

    @app.put("/api/cell/{addr}")
    async def put_cell(addr: str, request: Request) -> dict:
        address = _parse_path_address(addr)
        body = await _json_body(request, addr)
        content = _cell_content_from_body(addr, body)
        session.mutate_cell(address, content)
        return _report_body()

    @app.put("/api/interval/{addr}")
    async def put_interval(addr: str, request: Request) -> dict:
        address = _parse_path_address(addr)
        body = await _json_body(request, addr)
        if (
            not isinstance(body, list)
            or len(body) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in body)
        ):
            raise ApiError(400, "invalid_interval", "expected a [lo, hi] pair", cell=addr)
        lo, hi = float(body[0]), float(body[1])
        if lo > hi:
            raise ApiError(
                400, "invalid_interval", f"lower bound {lo} exceeds upper bound {hi}", cell=addr
            )
        try:
            interval = Interval(lo, hi)
        except ValueError as exc:
            raise ApiError(400, "invalid_interval", str(exc), cell=addr)
        session.put_interval(address, interval)
        return _report_body()

    @app.delete("/api/interval/{addr}")
    async def delete_interval(addr: str) -> dict:
        address = _parse_path_address(addr)
        session.delete_interval(address)
        return _report_body()

    return app


async def _json_body(request: Request, cell: str) -> Any:
    try:
        return await request.json()
    except Exception:
        raise ApiError(400, "format_error", "request body must be valid JSON", cell=cell)
