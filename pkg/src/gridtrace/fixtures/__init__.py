"""Bundled example sheets, including the cost-share demo workbook."""

from pathlib import Path

_HERE = Path(__file__).parent


def fig2_workbook_path() -> Path:
    """The cost-share demo workbook (the package's golden fixture)."""
    return _HERE / "fig2.wb.json"


def fig2_intervals_path() -> Path:
    """Expected intervals attached to column D of the demo workbook."""
    return _HERE / "fig2.iv.json"
