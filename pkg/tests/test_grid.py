import pytest
from hypothesis import given, strategies as st

from gridtrace.grid import (
    CellAddress,
    EMPTY,
    MalformedAddress,
    Number,
    Text,
    Workbook,
    column_to_letters,
    format_address,
    letters_to_column,
    parse_address,
)


def enum_columns(n):
    """Independent column-letter oracle: enumerate A, B, ..., Z, AA, AB, ..."""
    import itertools
    import string

    letters = string.ascii_uppercase
    out = []
    for size in itertools.count(1):
        for combo in itertools.product(letters, repeat=size):
            out.append("".join(combo))
            if len(out) == n:
                return out


class TestParseAddress:
    def test_d9(self):
        addr = parse_address("D9")
        assert (addr.column, addr.row) == (4, 9)
        assert not addr.col_absolute and not addr.row_absolute

    def test_a1(self):
        addr = parse_address("A1")
        assert (addr.column, addr.row) == (1, 1)

    def test_row_absolute(self):
        addr = parse_address("B$9")
        assert (addr.column, addr.row) == (2, 9)
        assert addr.row_absolute and not addr.col_absolute

    def test_case_insensitive(self):
        assert parse_address("d9") == parse_address("D9")

    @pytest.mark.parametrize(
        "bad", ["", "9", "D", "$", "D-9", "1A", "A0", "A1B", " A1", "XFE1", "A1048577", "ZZZZ1"]
    )
    def test_malformed(self, bad):
        with pytest.raises(MalformedAddress):
            parse_address(bad)

    def test_bounds_accepted(self):
        assert parse_address("XFD1048576").column == 16384


class TestFormatAddress:
    def test_d9(self):
        assert format_address(CellAddress(4, 9)) == "D9"

    def test_aa1(self):
        # oracle: 27th column name in plain enumeration is AA
        assert enum_columns(27)[-1] == "AA"
        assert format_address(CellAddress(27, 1)) == "AA1"

    def test_flags(self):
        assert format_address(CellAddress(2, 9, row_absolute=True)) == "B$9"
        assert format_address(CellAddress(3, 5, col_absolute=True)) == "$C5"


def test_column_codec_against_enumeration():
    for index, name in enumerate(enum_columns(800), start=1):
        assert column_to_letters(index) == name
        assert letters_to_column(name) == index


@given(st.integers(min_value=1, max_value=10000))
def test_column_codec_roundtrip(n):
    assert letters_to_column(column_to_letters(n)) == n


@given(
    st.integers(min_value=1, max_value=16384),
    st.integers(min_value=1, max_value=1048576),
    st.booleans(),
    st.booleans(),
)
def test_address_roundtrip(col, row, col_abs, row_abs):
    addr = CellAddress(col, row, col_absolute=col_abs, row_absolute=row_abs)
    text = format_address(addr)
    back = parse_address(text)
    assert back == addr
    assert (back.col_absolute, back.row_absolute) == (col_abs, row_abs)
    assert format_address(back) == text


@given(st.text(alphabet="abcdefgxyz", min_size=1, max_size=3), st.integers(1, 99999))
def test_roundtrip_uppercases(letters, row):
    text = f"{letters}{row}"
    try:
        addr = parse_address(text)
    except MalformedAddress:
        return
    assert format_address(addr) == text.upper()


def test_equality_ignores_flags():
    assert parse_address("D4") == parse_address("D$4")
    assert parse_address("D4") == parse_address("$D$4")
    assert hash(parse_address("D4")) == hash(parse_address("$D4"))


def test_ordering_is_row_major():
    addrs = [parse_address(s) for s in ["B2", "A1", "C1", "A2", "B1"]]
    assert [str(a) for a in sorted(addrs)] == ["A1", "B1", "C1", "A2", "B2"]


def test_ordering_total_on_grid_sample():
    cells = [CellAddress(c, r) for r in range(1, 5) for c in range(1, 5)]
    for i, a in enumerate(cells):
        for j, b in enumerate(cells):
            assert (a < b) == (i < j)
            assert (a == b) == (i == j)


def test_number_rejects_nan_and_infinity():
    with pytest.raises(ValueError):
        Number(float("nan"))
    with pytest.raises(ValueError):
        Number(float("inf"))


class TestWorkbook:
    def test_sparse_empty_never_stored(self):
        wb = Workbook()
        wb.set(parse_address("A1"), Number(1.0))
        wb.set(parse_address("A1"), EMPTY)
        assert len(wb) == 0
        assert wb.get(parse_address("A1")) == EMPTY

    def test_get_absent_is_empty(self):
        assert Workbook().get(parse_address("Q99")) == EMPTY

    def test_flagged_address_hits_same_cell(self):
        wb = Workbook()
        wb.set(parse_address("D$4"), Number(2.0))
        assert wb.get(parse_address("D4")) == Number(2.0)

    def test_cells_row_major(self):
        wb = Workbook()
        for s in ["B2", "A1", "B1"]:
            wb.set(parse_address(s), Text(s))
        assert [str(a) for a, _ in wb.cells()] == ["A1", "B1", "B2"]

    def test_copy_is_independent(self):
        wb = Workbook()
        wb.set(parse_address("A1"), Number(1.0))
        clone = wb.copy()
        clone.set(parse_address("A1"), Number(2.0))
        assert wb.get(parse_address("A1")) == Number(1.0)
