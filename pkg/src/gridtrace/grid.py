"""Cell addressing and the workbook container.

Addresses are 1-based (column, row) pairs rendered in A1 notation with
bijective base-26 column letters.  ``$`` absoluteness markers are parsed and
kept for display fidelity but never affect identity: ``D4`` and ``D$4`` name
the same cell.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from math import isfinite
from typing import TYPE_CHECKING, Iterator, Union

if TYPE_CHECKING:
    from gridtrace.formulas import FormulaAst

MAX_COLUMNS = 16_384  # column XFD
MAX_ROWS = 1_048_576

_ADDRESS_RE = re.compile(r"^(\$?)([A-Za-z]+)(\$?)([0-9]+)$")


class MalformedAddress(ValueError):
    """Text that is not a valid in-bounds A1-style cell address."""


def column_to_letters(column: int) -> str:
    """Spell a 1-based column index in bijective base-26: 1 -> A, 27 -> AA."""
    if column < 1:
        raise ValueError(f"column index must be >= 1, got {column}")
    letters = []
    while column:
        column, rem = divmod(column - 1, 26)
        letters.append(chr(ord("A") + rem))
    return "".join(reversed(letters))


def letters_to_column(letters: str) -> int:
    """Inverse of :func:`column_to_letters`; accepts any case."""
    column = 0
    for ch in letters.upper():
        if not "A" <= ch <= "Z":
            raise ValueError(f"invalid column letter {ch!r}")
        column = column * 26 + (ord(ch) - ord("A") + 1)
    return column


@total_ordering
@dataclass(frozen=True, eq=False)
class CellAddress:
    """A grid coordinate.

    Equality, hashing and ordering ignore the absoluteness flags; ordering is
    row-major (row first, then column), which is the tie-break order used by
    every deterministic result in the package.
    """

    column: int
    row: int
    col_absolute: bool = False
    row_absolute: bool = False

    def __post_init__(self) -> None:
        if not 1 <= self.column <= MAX_COLUMNS:
            raise ValueError(f"column {self.column} outside 1..{MAX_COLUMNS}")
        if not 1 <= self.row <= MAX_ROWS:
            raise ValueError(f"row {self.row} outside 1..{MAX_ROWS}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CellAddress):
            return NotImplemented
        return self.row == other.row and self.column == other.column

    def __lt__(self, other: "CellAddress") -> bool:
        if not isinstance(other, CellAddress):
            return NotImplemented
        return (self.row, self.column) < (other.row, other.column)

    def __hash__(self) -> int:
        return hash((self.row, self.column))

    def __str__(self) -> str:
        return format_address(self)

    def __repr__(self) -> str:
        return f"CellAddress({format_address(self)!r})"

    def without_flags(self) -> "CellAddress":
        if not (self.col_absolute or self.row_absolute):
            return self
        return CellAddress(self.column, self.row)


def parse_address(text: str) -> CellAddress:
    """Parse an A1-notation address, case-insensitively.

    Raises:
        MalformedAddress: for anything that is not ``$?letters$?digits`` or
            that lies outside the 16384 x 1048576 grid.
    """
    m = _ADDRESS_RE.match(text)
    if m is None:
        raise MalformedAddress(f"not a cell address: {text!r}")
    col_abs, letters, row_abs, digits = m.groups()
    if len(letters) > 3:  # longest valid column is XFD
        raise MalformedAddress(f"column out of range in {text!r}")
    column = letters_to_column(letters)
    row = int(digits)
    if not 1 <= column <= MAX_COLUMNS or not 1 <= row <= MAX_ROWS:
        raise MalformedAddress(f"address out of range: {text!r}")
    return CellAddress(column, row, col_absolute=bool(col_abs), row_absolute=bool(row_abs))


def format_address(addr: CellAddress) -> str:
    """Canonical upper-case A1 string, ``$`` markers included."""
    return "".join(
        (
            "$" if addr.col_absolute else "",
            column_to_letters(addr.column),
            "$" if addr.row_absolute else "",
            str(addr.row),
        )
    )


@dataclass(frozen=True)
class Empty:
    """An unpopulated cell."""


@dataclass(frozen=True)
class Number:
    value: float

    def __post_init__(self) -> None:
        if isinstance(self.value, bool) or not isfinite(self.value):
            raise ValueError(f"cell numbers must be finite reals, got {self.value!r}")


@dataclass(frozen=True)
class Text:
    text: str


@dataclass(frozen=True)
class Formula:
    ast: "FormulaAst"
    source_text: str


CellContent = Union[Empty, Number, Text, Formula]

EMPTY = Empty()


class Workbook:
    """Sparse map from address to cell content.

    Empty cells are never stored: setting a cell to ``Empty`` deletes it, so
    sparseness stays canonical and two workbooks with the same populated
    cells compare equal.
    """

    def __init__(self, cells: dict[CellAddress, CellContent] | None = None) -> None:
        self._cells: dict[CellAddress, CellContent] = {}
        if cells:
            for addr, content in cells.items():
                self.set(addr, content)

    def get(self, addr: CellAddress) -> CellContent:
        return self._cells.get(addr, EMPTY)

    def set(self, addr: CellAddress, content: CellContent) -> None:
        addr = addr.without_flags()
        if isinstance(content, Empty):
            self._cells.pop(addr, None)
        else:
            self._cells[addr] = content

    def delete(self, addr: CellAddress) -> None:
        self._cells.pop(addr.without_flags(), None)

    def addresses(self) -> list[CellAddress]:
        """Populated addresses in row-major order."""
        return sorted(self._cells)

    def cells(self) -> Iterator[tuple[CellAddress, CellContent]]:
        """(address, content) pairs in row-major order."""
        for addr in self.addresses():
            yield addr, self._cells[addr]

    def copy(self) -> "Workbook":
        wb = Workbook()
        wb._cells = dict(self._cells)
        return wb

    def __contains__(self, addr: CellAddress) -> bool:
        return addr in self._cells

    def __len__(self) -> int:
        return len(self._cells)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Workbook):
            return NotImplemented
        return self._cells == other._cells
