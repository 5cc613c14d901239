"""Formula text to AST and back: tokenizer, recursive-descent parser, printer.

The grammar covers decimal literals, cell references, rectangular ranges,
parentheses, unary minus, the four arithmetic operators and ``SUM(...)``.
Ranges are only legal as direct arguments of a call; anywhere else they raise
:class:`RangeOutsideAggregate`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterator, NamedTuple, Union

from gridtrace.grid import CellAddress, MalformedAddress, parse_address, format_address


class FormulaSyntaxError(ValueError):
    """Positioned parse failure; ``position`` indexes into the formula text."""

    def __init__(self, position: int, expected: str) -> None:
        super().__init__(f"syntax error at position {position}: {expected}")
        self.position = position
        self.expected = expected


class RangeOutsideAggregate(ValueError):
    """A range reference used anywhere other than directly inside a call."""


class UnaryOp(enum.Enum):
    NEG = "-"


class BinaryOp(enum.Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"


@dataclass(frozen=True)
class NumberLit:
    value: float


@dataclass(frozen=True)
class CellRef:
    addr: CellAddress


@dataclass(frozen=True)
class RangeRef:
    """Rectangular range, normalized so start is the top-left corner."""

    start: CellAddress
    end: CellAddress


@dataclass(frozen=True)
class Unary:
    op: UnaryOp
    operand: "FormulaAst"


@dataclass(frozen=True)
class Binary:
    op: BinaryOp
    left: "FormulaAst"
    right: "FormulaAst"


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple["FormulaAst", ...]


FormulaAst = Union[NumberLit, CellRef, RangeRef, Unary, Binary, Call]

FUNCTIONS = frozenset({"SUM"})

_TOKEN_RE = re.compile(
    r"""
      (?P<cellref>\$?[A-Za-z]+\$?[0-9]+)
    | (?P<number>[0-9]+(?:\.[0-9]*)?|\.[0-9]+)
    | (?P<name>[A-Za-z][A-Za-z0-9]*)
    | (?P<lparen>\()
    | (?P<rparen>\))
    | (?P<colon>:)
    | (?P<comma>,)
    | (?P<plus>\+)
    | (?P<minus>-)
    | (?P<star>\*)
    | (?P<slash>/)
    | (?P<ws>\s+)
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


_EOF = "eof"


def _tokenize(text: str, offset: int) -> Iterator[Token]:
    last = 0
    for m in _TOKEN_RE.finditer(text):
        if m.start() != last:
            raise FormulaSyntaxError(offset + last, f"unrecognized character {text[last]!r}")
        last = m.end()
        kind = m.lastgroup or ""
        if kind != "ws":
            yield Token(kind, m.group(), offset + m.start())
    if last != len(text):
        raise FormulaSyntaxError(offset + last, f"unrecognized character {text[last]!r}")
    yield Token(_EOF, "", offset + len(text))


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self._tokens = tokens
        self._idx = 0

    @property
    def _cur(self) -> Token:
        return self._tokens[self._idx]

    def _consume(self, kind: str) -> Token | None:
        tok = self._cur
        if tok.kind == kind:
            self._idx += 1
            return tok
        return None

    def _expect(self, kind: str, expected: str) -> Token:
        tok = self._consume(kind)
        if tok is None:
            raise FormulaSyntaxError(self._cur.pos, f"expected {expected}")
        return tok

    def parse(self) -> FormulaAst:
        node = self._expr()
        if self._cur.kind != _EOF:
            raise FormulaSyntaxError(self._cur.pos, "expected end of formula or an operator")
        return _no_range(node)

    def _expr(self) -> FormulaAst:
        node = self._term()
        while True:
            if self._consume("plus"):
                node = Binary(BinaryOp.ADD, _no_range(node), _no_range(self._term()))
            elif self._consume("minus"):
                node = Binary(BinaryOp.SUB, _no_range(node), _no_range(self._term()))
            else:
                return node

    def _term(self) -> FormulaAst:
        node = self._unary()
        while True:
            if self._consume("star"):
                node = Binary(BinaryOp.MUL, _no_range(node), _no_range(self._unary()))
            elif self._consume("slash"):
                node = Binary(BinaryOp.DIV, _no_range(node), _no_range(self._unary()))
            else:
                return node

    def _unary(self) -> FormulaAst:
        if self._consume("minus"):
            return Unary(UnaryOp.NEG, _no_range(self._unary()))
        return self._atom()

    def _atom(self) -> FormulaAst:
        tok = self._cur
        if self._consume("number"):
            return NumberLit(float(tok.text))
        if self._consume("cellref"):
            start = self._address(tok)
            if self._consume("colon"):
                end_tok = self._expect("cellref", "a cell reference after ':'")
                return _normalize_range(start, self._address(end_tok))
            return CellRef(start)
        if self._consume("name"):
            fn = tok.text.upper()
            if fn not in FUNCTIONS:
                raise FormulaSyntaxError(tok.pos, f"unknown function {tok.text!r} (supported: SUM)")
            self._expect("lparen", "'(' after function name")
            args = [self._expr()]
            while self._consume("comma"):
                args.append(self._expr())
            self._expect("rparen", "')' or ',' in argument list")
            return Call(fn, tuple(args))
        if self._consume("lparen"):
            node = _no_range(self._expr())
            self._expect("rparen", "')'")
            return node
        raise FormulaSyntaxError(tok.pos, "expected a number, cell reference, function call, '(' or '-'")

    def _address(self, tok: Token) -> CellAddress:
        try:
            return parse_address(tok.text)
        except MalformedAddress as exc:
            raise FormulaSyntaxError(tok.pos, str(exc)) from exc


def _no_range(node: FormulaAst) -> FormulaAst:
    if isinstance(node, RangeRef):
        raise RangeOutsideAggregate(
            f"range {format_address(node.start)}:{format_address(node.end)} "
            "may only appear directly inside SUM(...)"
        )
    return node


def _normalize_range(a: CellAddress, b: CellAddress) -> RangeRef:
    (lo_col, lo_col_abs), (hi_col, hi_col_abs) = sorted(
        [(a.column, a.col_absolute), (b.column, b.col_absolute)]
    )
    (lo_row, lo_row_abs), (hi_row, hi_row_abs) = sorted(
        [(a.row, a.row_absolute), (b.row, b.row_absolute)]
    )
    return RangeRef(
        CellAddress(lo_col, lo_row, col_absolute=lo_col_abs, row_absolute=lo_row_abs),
        CellAddress(hi_col, hi_row, col_absolute=hi_col_abs, row_absolute=hi_row_abs),
    )


def parse_formula(text: str) -> FormulaAst:
    """Parse ``=expression`` into an AST.

    Raises:
        FormulaSyntaxError: malformed input, with the failing position.
        RangeOutsideAggregate: a range used outside a SUM argument.
    """
    if not text.startswith("="):
        raise FormulaSyntaxError(0, "formula must begin with '='")
    tokens = list(_tokenize(text[1:], offset=1))
    return _Parser(tokens).parse()


def _format_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    s = repr(value)
    if "e" in s or "E" in s:
        # the grammar has no scientific notation; expand exactly
        s = format(Decimal(value), "f")
    return s


_LEVEL_ADDSUB = 1
_LEVEL_MULDIV = 2
_LEVEL_UNARY = 3
_LEVEL_ATOM = 4

_BINARY_LEVEL = {
    BinaryOp.ADD: _LEVEL_ADDSUB,
    BinaryOp.SUB: _LEVEL_ADDSUB,
    BinaryOp.MUL: _LEVEL_MULDIV,
    BinaryOp.DIV: _LEVEL_MULDIV,
}


def _print_node(node: FormulaAst) -> tuple[str, int]:
    if isinstance(node, NumberLit):
        return _format_number(node.value), _LEVEL_ATOM
    if isinstance(node, CellRef):
        return format_address(node.addr), _LEVEL_ATOM
    if isinstance(node, RangeRef):
        return f"{format_address(node.start)}:{format_address(node.end)}", _LEVEL_ATOM
    if isinstance(node, Unary):
        text, level = _print_node(node.operand)
        if level < _LEVEL_UNARY:
            text = f"({text})"
        return f"-{text}", _LEVEL_UNARY
    if isinstance(node, Binary):
        level = _BINARY_LEVEL[node.op]
        left, left_level = _print_node(node.left)
        if left_level < level:
            left = f"({left})"
        right, right_level = _print_node(node.right)
        # operators are left-associative: a right child at the same level
        # only arises from an explicitly grouped source expression
        if right_level <= level:
            right = f"({right})"
        return f"{left}{node.op.value}{right}", level
    if isinstance(node, Call):
        args = ",".join(_print_node(arg)[0] for arg in node.args)
        return f"{node.fn}({args})", _LEVEL_ATOM
    raise TypeError(f"not an AST node: {node!r}")


def print_formula(ast: FormulaAst) -> str:
    """Canonical source text; ``parse_formula(print_formula(ast)) == ast``."""
    return "=" + _print_node(ast)[0]


def iter_range(start: CellAddress, end: CellAddress) -> Iterator[CellAddress]:
    """Addresses of a normalized rectangle in row-major order, flags stripped."""
    for row in range(start.row, end.row + 1):
        for col in range(start.column, end.column + 1):
            yield CellAddress(col, row)


def referenced_cells(ast: FormulaAst) -> tuple[CellAddress, ...]:
    """Every cell the formula reads, deduplicated, row-major, flags stripped."""
    seen: set[CellAddress] = set()

    def walk(node: FormulaAst) -> None:
        if isinstance(node, CellRef):
            seen.add(node.addr.without_flags())
        elif isinstance(node, RangeRef):
            seen.update(iter_range(node.start, node.end))
        elif isinstance(node, Unary):
            walk(node.operand)
        elif isinstance(node, Binary):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Call):
            for arg in node.args:
                walk(arg)

    walk(ast)
    return tuple(sorted(seen))
