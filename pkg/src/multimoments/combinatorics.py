"""Exact integer combinatorics: Stirling numbers of the second kind,
binomial coefficients and falling factorials.

All values are Python ints, so nothing ever overflows.  Stirling numbers
live in a triangular table that grows on demand; growth builds new rows
under a lock and publishes them by swapping a tuple reference, so readers
never observe a half-built table.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import TypeVar

__all__ = [
    "StirlingTable",
    "stirling2",
    "stirling_row",
    "binomial",
    "falling_factorial",
    "bell",
]

Num = TypeVar("Num", int, Fraction)


class StirlingTable:
    """Triangular table of S2(p, k) for 0 <= k <= p <= max_p."""

    def __init__(self, max_p: int = 8) -> None:
        self._lock = threading.Lock()
        self._rows: tuple[tuple[int, ...], ...] = ((1,),)
        self.grow(max_p)

    @property
    def max_p(self) -> int:
        return len(self._rows) - 1

    def grow(self, max_p: int) -> None:
        if max_p <= self.max_p:
            return
        with self._lock:
            rows = list(self._rows)
            while len(rows) <= max_p:
                prev = rows[-1]
                p = len(rows)
                row = [0] * (p + 1)
                for k in range(1, p + 1):
                    above = prev[k] if k < p else 0
                    row[k] = k * above + prev[k - 1]
                rows.append(tuple(row))
            self._rows = tuple(rows)

    def row(self, p: int) -> tuple[int, ...]:
        if p > self.max_p:
            self.grow(p)
        return self._rows[p]

    def __call__(self, p: int, k: int) -> int:
        if k > p:
            return 0
        return self.row(p)[k]


_TABLE = StirlingTable()


def stirling2(p: int, k: int) -> int:
    """Number of partitions of a p-set into k non-empty blocks (0 if k > p)."""
    if p < 0 or k < 0:
        raise ValueError(f"stirling2 needs non-negative arguments, got ({p}, {k})")
    return _TABLE(p, k)


def stirling_row(p: int) -> tuple[int, ...]:
    """Return (S2(p, 0), ..., S2(p, p))."""
    if p < 0:
        raise ValueError(f"negative order {p}")
    return _TABLE.row(p)


@lru_cache(maxsize=4096)
def binomial(p: int, l: int) -> int:
    """p choose l; 0 when l > p."""
    if p < 0 or l < 0:
        raise ValueError(f"binomial needs non-negative arguments, got ({p}, {l})")
    return math.comb(p, l)


def falling_factorial(m: Num, k: int) -> Num:
    """m (m - 1) ... (m - k + 1), the empty product for k = 0.

    Works for ints and Fractions; for a non-negative integer m with k > m
    the factor (m - m) makes the result 0.
    """
    if k < 0:
        raise ValueError(f"falling factorial order must be >= 0, got {k}")
    out = m - m + 1
    for j in range(k):
        factor = m - j
        if factor == 0:
            return m - m
        out *= factor
    return out


def bell(p: int) -> int:
    return sum(stirling_row(p))
