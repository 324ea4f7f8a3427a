"""
Dense exact matrices over the rationals.

Entries are Python ints or Fractions. Rank and nullity go through
Bareiss fraction-free elimination on integer rows (rational rows are first
cleared of denominators), so no intermediate value is ever rounded.
"""

from fractions import Fraction
from math import lcm
from typing import List, Sequence

import numpy as np


def _normalize(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


class ExactMatrix:
    """Immutable rows x cols matrix of arbitrary-precision rationals."""

    __slots__ = ("_rows", "_cols", "_data", "_rank")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence] = None):
        if data is None:
            data = [[0] * cols for _ in range(rows)]
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError(f"data does not match shape {rows}x{cols}")
        self._rows = rows
        self._cols = cols
        self._data = tuple(tuple(_normalize(x) for x in row) for row in data)
        self._rank = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def identity(cls, size: int):
        return cls(size, size, [[int(i == j) for j in range(size)] for i in range(size)])

    @property
    def shape(self):
        return self._rows, self._cols

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    def __getitem__(self, index):
        i, j = index
        return self._data[i][j]

    def row(self, i: int):
        return self._data[i]

    def tolist(self) -> List[list]:
        return [list(r) for r in self._data]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        return f"ExactMatrix({self._rows}x{self._cols}, {self.tolist()})"

    # -- arithmetic ---------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self._cols, self._rows, [list(col) for col in zip(*self._data)] if self._rows else
                           [[] for _ in range(self._cols)])

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self._cols != other._rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        other_cols = list(zip(*other._data)) if other._rows else [()] * other._cols
        out = []
        for row in self._data:
            nonzero = [(k, x) for k, x in enumerate(row) if x]
            out.append([sum(x * col[k] for k, x in nonzero) for col in other_cols])
        return ExactMatrix(self._rows, other._cols, out)

    def _combine(self, other, op):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return ExactMatrix(
            self._rows,
            self._cols,
            [[op(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)],
        )

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def scale(self, factor) -> "ExactMatrix":
        return ExactMatrix(self._rows, self._cols, [[factor * x for x in r] for r in self._data])

    def shift_diagonal(self, value) -> "ExactMatrix":
        """Return self + value * I (square matrices only)."""
        if self._rows != self._cols:
            raise ValueError("diagonal shift needs a square matrix")
        return ExactMatrix(
            self._rows,
            self._cols,
            [[x + value if i == j else x for j, x in enumerate(r)] for i, r in enumerate(self._data)],
        )

    # -- predicates and invariants ---------------------------------------------

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_symmetric(self) -> bool:
        return self._rows == self._cols and all(
            self._data[i][j] == self._data[j][i] for i in range(self._rows) for j in range(i)
        )

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for r in self._data for x in r)

    def trace(self):
        return sum(self._data[i][i] for i in range(min(self._rows, self._cols)))

    def gershgorin_bound(self):
        """Largest absolute row sum; bounds every eigenvalue in absolute value."""
        return max((sum(abs(x) for x in r) for r in self._data), default=0)

    def rank(self) -> int:
        if self._rank is None:
            self._rank = bareiss_rank(self._integer_rows())
        return self._rank

    def nullity(self) -> int:
        """Dimension of the kernel of the map R^cols -> R^rows."""
        return self._cols - self.rank()

    def _integer_rows(self) -> List[List[int]]:
        out = []
        for row in self._data:
            if not any(row):
                continue
            denominators = [x.denominator for x in row if isinstance(x, Fraction)]
            if denominators:
                scale = lcm(*denominators)
                row = [int(x * scale) for x in row]
            out.append(list(row))
        return out

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self._data], dtype=float).reshape(self._rows, self._cols)


def bareiss_rank(rows: List[List[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Every intermediate entry is a minor of the input, so the division by the
    previous pivot is exact. Works in place on ``rows``.
    """
    nrows = len(rows)
    if nrows == 0:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        top = rows[rank]
        p = top[col]
        for r in range(rank + 1, nrows):
            current = rows[r]
            a = current[col]
            if a:
                for c in range(col + 1, ncols):
                    current[c] = (p * current[c] - a * top[c]) // prev
            else:
                for c in range(col + 1, ncols):
                    if current[c]:
                        current[c] = (p * current[c]) // prev
            current[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank
