"""Dense exact-rational matrices with fraction-free determinants.

Determinants clear denominators row by row and run Bareiss elimination over
the resulting integer matrix, which keeps intermediate entries as true minors
instead of letting numerators and denominators explode. Cramer solves and
Hadamard bounds are built on top; matrices are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


class SingularMatrixError(ArithmeticError):
    """Raised when a Cramer solve meets a vanishing determinant."""


@dataclass(frozen=True)
class Matrix:
    """Rectangular grid of exact rationals, stored row-major."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged rows in matrix")

    @staticmethod
    def from_rows(rows: Iterable[Sequence[Fraction]]) -> "Matrix":
        return Matrix(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @staticmethod
    def from_columns(columns: Sequence[Sequence[Fraction]]) -> "Matrix":
        if not columns:
            return Matrix(())
        height = len(columns[0])
        if any(len(col) != height for col in columns):
            raise ValueError("ragged columns")
        return Matrix.from_rows(
            [[col[i] for col in columns] for i in range(height)]
        )

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix.from_rows(
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def column(self, j: int) -> tuple[Fraction, ...]:
        """Column with 0-based index ``j``."""
        return tuple(row[j] for row in self.entries)

    def replace_column(self, j: int, column: Sequence[Fraction]) -> "Matrix":
        if len(column) != self.rows:
            raise ValueError("replacement column has wrong length")
        return Matrix.from_rows(
            [
                [column[i] if c == j else x for c, x in enumerate(row)]
                for i, row in enumerate(self.entries)
            ]
        )


def _bareiss_int(a: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination.

    All interior divisions are exact; the matrix is consumed.
    """
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_exact(m: Matrix) -> Fraction:
    """Exact determinant of a square matrix; the empty matrix has det 1."""
    if not m.is_square:
        raise ValueError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = 1
    cleared: list[list[int]] = []
    for row in m.entries:
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        scale *= den
        cleared.append([int(x.numerator * (den // x.denominator)) for x in row])
    return Fraction(_bareiss_int(cleared), scale)


def solve_cramer(a: Matrix, b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Solve ``a @ v = b`` exactly, component i being det(A_i)/det(A).

    ``A_i`` replaces column i of ``a`` by ``b``; ``a`` must be nonsingular.
    """
    if not a.is_square:
        raise ValueError("Cramer solve needs a square matrix")
    if len(b) != a.rows:
        raise ValueError("right-hand side has wrong length")
    d = det_exact(a)
    if d == 0:
        raise SingularMatrixError("coefficient matrix is singular")
    return tuple(det_exact(a.replace_column(i, b)) / d for i in range(a.rows))


def hadamard_sq_bound(columns: Sequence[Sequence[Fraction]]) -> Fraction:
    """Product of squared Euclidean column norms.

    For any square matrix with these columns, det**2 is bounded by this
    value; staying with squares keeps everything rational.
    """
    if columns:
        height = len(columns[0])
        if any(len(col) != height for col in columns):
            raise ValueError("ragged columns")
    bound = Fraction(1)
    for col in columns:
        bound *= sum((x * x for x in col), Fraction(0))
    return bound
