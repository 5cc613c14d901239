"""Command line interface: analyze, trace, serve.

Exit codes: 0 success, 1 usage or input-format errors, 2 when ``trace`` is
asked about a cell that carries no symptom of fault.
"""

from __future__ import annotations

import argparse
import json
import sys

from gridtrace.graph import CircularReference
from gridtrace.grid import CellAddress, MalformedAddress, Workbook, parse_address
from gridtrace.intervals import Interval, format_interval
from gridtrace.io import FormatError, InvalidInterval, load_intervals, load_workbook
from gridtrace.report import AnalysisReport, build_report, run_analysis
from gridtrace.trace import QueryNotFaulty, trace_most_influential

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_FAULTY = 2

_ANSI = {"red": "\033[31m", "yellow": "\033[33m", "neutral": ""}
_ANSI_RESET = "\033[0m"


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the contract here is 1
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="gridtrace", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="evaluate, verify and print the report")
    analyze.add_argument("--workbook", required=True, help="workbook JSON file")
    analyze.add_argument("--intervals", help="expected-interval JSON file")
    analyze.add_argument("--format", choices=["json", "table"], default="table")

    trace = sub.add_parser("trace", help="find the most influential faulty cell")
    trace.add_argument("--workbook", required=True)
    trace.add_argument("--intervals", help="expected-interval JSON file")
    trace.add_argument("--cell", required=True, help="cell address to trace from")
    trace.add_argument("--explain", action="store_true", help="dump every search step")

    serve = sub.add_parser("serve", help="start the debugger HTTP service")
    serve.add_argument("--workbook", required=True)
    serve.add_argument("--intervals", help="expected-interval JSON file")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")

    return parser


def _load_inputs(args: argparse.Namespace) -> tuple[Workbook, dict[CellAddress, Interval]]:
    wb = load_workbook(args.workbook)
    expected = load_intervals(args.intervals) if args.intervals else {}
    return wb, expected


def _fmt_value(value: float | None) -> str:
    return "" if value is None else f"{value:,.2f}"


def _fmt_interval(iv: Interval | None) -> str:
    return "" if iv is None else format_interval(iv)


def _print_table(report: AnalysisReport, out) -> None:
    colorize = out.isatty()
    rows = [["Cell", "Kind", "Content", "Value", "Expected", "Bounding", "Status", "Reasons"]]
    for record in report.cells:
        content = record.formula or record.text or ""
        status = record.status
        if colorize and _ANSI[record.color]:
            status = f"{_ANSI[record.color]}{status}{_ANSI_RESET}"
        rows.append(
            [
                str(record.address),
                record.kind,
                content,
                _fmt_value(record.value),
                _fmt_interval(record.expected),
                _fmt_interval(record.bounding),
                status,
                ",".join(record.reasons),
            ]
        )
    widths = [max(len(_strip_ansi(row[i])) for row in rows) for i in range(len(rows[0]))]
    for row in rows:
        line = "  ".join(
            cell + " " * (widths[i] - len(_strip_ansi(cell))) for i, cell in enumerate(row)
        )
        print(line.rstrip(), file=out)
    if report.graph_error is not None:
        chain = " -> ".join(str(a) for a in report.graph_error)
        print(f"\ncircular reference: {chain}", file=out)


def _strip_ansi(text: str) -> str:
    for code in (*_ANSI.values(), _ANSI_RESET):
        if code:
            text = text.replace(code, "")
    return text


def _cmd_analyze(args: argparse.Namespace) -> int:
    wb, expected = _load_inputs(args)
    report = build_report(run_analysis(wb, expected))
    if args.format == "json":
        print(report.to_json())
    else:
        _print_table(report, sys.stdout)
    return EXIT_OK


def _cmd_trace(args: argparse.Namespace) -> int:
    wb, expected = _load_inputs(args)
    try:
        query = parse_address(args.cell)
    except MalformedAddress as exc:
        print(f"gridtrace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    analysis = run_analysis(wb, expected)
    if analysis.graph is None:
        chain = " -> ".join(str(a) for a in analysis.cycle or [])
        print(f"gridtrace: error: circular reference: {chain}", file=sys.stderr)
        return EXIT_USAGE
    if query not in analysis.graph:
        print(f"gridtrace: error: unknown cell {args.cell}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = trace_most_influential(analysis.graph, analysis.marks, query)
    except QueryNotFaulty as exc:
        print(f"QueryNotFaulty: {exc}", file=sys.stderr)
        return EXIT_NOT_FAULTY
    if args.explain:
        print(json.dumps(result.to_dict(), indent=2))
    else:
        print(result.most_influential)
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from gridtrace.service import SessionState, create_app

    wb, expected = _load_inputs(args)
    app = create_app(SessionState(wb, expected))
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "trace":
            return _cmd_trace(args)
        return _cmd_serve(args)
    except FileNotFoundError as exc:
        print(f"gridtrace: error: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, InvalidInterval, CircularReference) as exc:
        print(f"gridtrace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
