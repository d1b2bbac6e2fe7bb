"""Exact integer combinatorics: factorials, Stirling numbers, poly-Bernoulli numbers.

Python's ``int`` is the arbitrary-precision integer type and
``fractions.Fraction`` the reduced rational type used throughout the package.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

ExactInt = int
ExactRational = Fraction

__all__ = [
    "ExactInt",
    "ExactRational",
    "StirlingTable",
    "bell_number",
    "factorial",
    "poly_bernoulli",
    "stirling2",
]


class StirlingTable:
    """Triangular table of Stirling numbers of the second kind.

    Rows are built with the additive recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1),
    so every entry stays a nonnegative integer. Rows are tuples and the table
    only ever grows; a row handed to a reader never changes.
    """

    def __init__(self, max_n: int = 0):
        self._rows: list[tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()
        self.extend_to(max_n)

    @property
    def max_n(self) -> int:
        return len(self._rows) - 1

    def extend_to(self, n: int) -> "StirlingTable":
        if n <= self.max_n:
            return self
        with self._lock:
            rows = self._rows
            while len(rows) <= n:
                prev = rows[-1]
                size = len(prev)
                row = [0] * (size + 1)
                for k in range(1, size + 1):
                    left = prev[k - 1]
                    here = prev[k] if k < size else 0
                    row[k] = k * here + left
                rows.append(tuple(row))
        return self

    def row(self, n: int) -> tuple[int, ...]:
        """Return (S(n,0), ..., S(n,n))."""
        self.extend_to(n)
        return self._rows[n]

    def __call__(self, n: int, k: int) -> int:
        if n < 0 or k < 0 or k > n:
            return 0
        return self.row(n)[k]


_TABLE = StirlingTable()


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind; 0 outside 0 <= k <= n."""
    return _TABLE(n, k)


def stirling_row(n: int) -> tuple[int, ...]:
    return _TABLE.row(n)


def factorial(n: int) -> int:
    return math.factorial(n)


def poly_bernoulli(n: int, k: int) -> int:
    """B_{n,k}: the number of n x k lonesum matrices.

    >>> poly_bernoulli(2, 2)
    14
    >>> poly_bernoulli(3, 4)
    1066
    """
    if n < 0 or k < 0:
        raise ValueError("poly_bernoulli needs nonnegative indices")
    rows_n = stirling_row(n + 1)
    rows_k = stirling_row(k + 1)
    total = 0
    fact = 1
    for m in range(min(n, k) + 1):
        if m:
            fact *= m
        total += fact * fact * rows_n[m + 1] * rows_k[m + 1]
    return total


def bell_number(n: int) -> int:
    """Bell number from the Bell triangle (independent of the Stirling table)."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]
