"""Closed-interval arithmetic over finite doubles.

Endpoints use plain double arithmetic with no directed rounding; callers that
compare against interval results apply a small tolerance instead.  Degenerate
intervals ``[v, v]`` carry discrete values into interval computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite
from typing import Iterable


class IntervalOverflow(ArithmeticError):
    """An interval endpoint left the finite double range."""


class DivisorStraddlesZero(ZeroDivisionError):
    """Interval division where the divisor contains zero."""


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (isfinite(self.lo) and isfinite(self.hi)):
            raise ValueError(f"interval endpoints must be finite: [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"interval lower bound exceeds upper: [{self.lo}, {self.hi}]")

    @staticmethod
    def degenerate(value: float) -> "Interval":
        return Interval(value, value)

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __str__(self) -> str:
        return format_interval(self)

    def __add__(self, other: "Interval") -> "Interval":
        return interval_add(self, other)

    def __sub__(self, other: "Interval") -> "Interval":
        return interval_sub(self, other)

    def __mul__(self, other: "Interval") -> "Interval":
        return interval_mul(self, other)

    def __truediv__(self, other: "Interval") -> "Interval":
        return interval_div(self, other)

    def __neg__(self) -> "Interval":
        return interval_neg(self)


def _checked(lo: float, hi: float) -> Interval:
    if not (isfinite(lo) and isfinite(hi)):
        raise IntervalOverflow(f"endpoint overflow: [{lo}, {hi}]")
    return Interval(lo, hi)


def interval_add(a: Interval, b: Interval) -> Interval:
    return _checked(a.lo + b.lo, a.hi + b.hi)


def interval_neg(a: Interval) -> Interval:
    return Interval(-a.hi, -a.lo)


def interval_sub(a: Interval, b: Interval) -> Interval:
    return interval_add(a, interval_neg(b))


def interval_mul(a: Interval, b: Interval) -> Interval:
    products = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return _checked(min(products), max(products))


def interval_div(a: Interval, b: Interval) -> Interval:
    if b.lo <= 0.0 <= b.hi:
        raise DivisorStraddlesZero(f"divisor interval [{b.lo}, {b.hi}] contains zero")
    # reciprocals of subnormal endpoints can overflow
    return interval_mul(a, _checked(1.0 / b.hi, 1.0 / b.lo))


def interval_sum(items: Iterable[Interval]) -> Interval:
    total = Interval(0.0, 0.0)
    for item in items:
        total = interval_add(total, item)
    return total


def format_interval(iv: Interval) -> str:
    """Render as ``[lo:hi]``, e.g. ``[4000:4250]``, for reports."""
    return f"[{_fmt(iv.lo)}:{_fmt(iv.hi)}]"


def _fmt(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)
