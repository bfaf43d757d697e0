"""Immutable square integer matrices with exact determinant and inverse."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from orbistack.errors import DimensionMismatch, NotUnimodular


class IntegerMatrix:
    __slots__ = ("rows", "n")

    def __init__(self, rows: Iterable[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise DimensionMismatch("matrix must be square")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> IntegerMatrix:
        return cls([[0] * n for _ in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, IntegerMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IntegerMatrix({self.tolist()!r})"

    def __str__(self):
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.rows) + "]"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(r[j] for r in self.rows) for j in range(self.n)]

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(self.columns())

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def height(self) -> int:
        return max((abs(x) for r in self.rows for x in r), default=0)

    def _check(self, other: IntegerMatrix):
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        self._check(other)
        return IntegerMatrix(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        self._check(other)
        return IntegerMatrix(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> IntegerMatrix:
        return IntegerMatrix([[-x for x in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegerMatrix([[other * x for x in r] for r in self.rows])
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        self._check(other)
        cols = other.columns()
        return IntegerMatrix(
            [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in self.rows]
        )

    def __rmul__(self, k):
        if isinstance(k, int):
            return self * k
        return NotImplemented

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product A·v for a column vector v."""
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.n}x{self.n}")
        return tuple(sum(x * y for x, y in zip(r, v)) for r in self.rows)

    def det(self) -> int:
        """Bareiss fraction-free elimination."""
        n = self.n
        if n == 0:
            return 1
        m = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.det() in (1, -1)

    def inverse(self) -> IntegerMatrix:
        if not self.is_unimodular():
            raise NotUnimodular(f"det {self.det()} is not ±1 for {self}")
        n = self.n
        aug = [
            [Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
            for i, r in enumerate(self.rows)
        ]
        for col in range(n):
            piv = next(i for i in range(col, n) if aug[i][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for i in range(n):
                if i != col and aug[i][col] != 0:
                    f = aug[i][col]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
        out = [[x for x in r[n:]] for r in aug]
        assert all(x.denominator == 1 for r in out for x in r)
        return IntegerMatrix([[int(x) for x in r] for r in out])

    def __pow__(self, k: int) -> IntegerMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        result = IntegerMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result
