"""Exact matrix kernel: determinants against a cofactor oracle, Cramer
solves by re-substitution, Hadamard bounds."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from auerbach.matrices import (
    Matrix,
    SingularMatrixError,
    det_exact,
    hadamard_sq_bound,
    solve_cramer,
)

small_rationals = st.fractions(
    min_value=-9, max_value=9, max_denominator=9
)


def square_matrices(max_size=5):
    return st.integers(1, max_size).flatmap(
        lambda n: st.lists(
            st.lists(small_rationals, min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    ).map(Matrix.from_rows)


def det_cofactor(m: Matrix) -> Fraction:
    """Independent reference: Laplace expansion along the first row."""
    n = m.rows
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m.entries[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = Matrix.from_rows(
            [
                [x for c, x in enumerate(row) if c != j]
                for row in m.entries[1:]
            ]
        )
        term = m.entries[0][j] * det_cofactor(minor)
        total += term if j % 2 == 0 else -term
    return total


def test_det_identity():
    assert det_exact(Matrix.identity(3)) == 1


def test_det_empty_matrix_is_one():
    assert det_exact(Matrix(())) == 1


def test_det_triangular_example():
    m = Matrix.from_rows([[Fraction(1), Fraction(1, 2)], [Fraction(0), Fraction(1, 3)]])
    # frozen from the cofactor oracle
    assert det_cofactor(m) == Fraction(1, 3)
    assert det_exact(m) == Fraction(1, 3)


def test_det_repeated_row_is_zero():
    m = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [1, 2, 3]])
    assert det_exact(m) == 0


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det_exact(Matrix.from_rows([[1, 2, 3], [4, 5, 6]]))


@given(square_matrices())
@settings(max_examples=150)
def test_det_matches_cofactor_oracle(m):
    assert det_exact(m) == det_cofactor(m)


def test_cramer_identity_returns_rhs():
    b = [Fraction(3), Fraction(-1, 2), Fraction(7, 5)]
    assert solve_cramer(Matrix.identity(3), b) == tuple(b)


def test_cramer_diagonal_example():
    a = Matrix.from_rows([[2, 0], [0, 4]])
    v = solve_cramer(a, [Fraction(1), Fraction(1)])
    assert v == (Fraction(1, 2), Fraction(1, 4))
    # substitute back
    assert [sum(r * x for r, x in zip(row, v)) for row in a.entries] == [1, 1]


def test_cramer_zero_rhs():
    a = Matrix.from_rows([[1, 1], [0, 1]])
    assert solve_cramer(a, [Fraction(0), Fraction(0)]) == (0, 0)


def test_cramer_rejects_singular():
    with pytest.raises(SingularMatrixError):
        solve_cramer(Matrix.from_rows([[1, 2], [2, 4]]), [Fraction(1), Fraction(0)])


@given(square_matrices(4), st.data())
@settings(max_examples=100)
def test_cramer_solution_satisfies_system(m, data):
    if det_exact(m) == 0:
        return
    b = data.draw(
        st.lists(small_rationals, min_size=m.rows, max_size=m.rows)
    )
    v = solve_cramer(m, b)
    for row, rhs in zip(m.entries, b):
        assert sum(r * x for r, x in zip(row, v)) == rhs


def test_hadamard_equality_for_orthonormal_columns():
    cols = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    assert hadamard_sq_bound(cols) == 1
    assert det_exact(Matrix.from_columns(cols)) ** 2 == 1


def test_hadamard_strict_for_dependent_columns():
    cols = [(Fraction(1), Fraction(1)), (Fraction(1), Fraction(1))]
    assert hadamard_sq_bound(cols) == 4
    assert det_exact(Matrix.from_columns(cols)) ** 2 == 0


def test_hadamard_worked_example():
    cols = [(Fraction(1), Fraction(1, 2)), (Fraction(1, 3), Fraction(0))]
    assert hadamard_sq_bound(cols) == Fraction(5, 36)
    assert det_exact(Matrix.from_columns(cols)) ** 2 == Fraction(1, 36)


def test_hadamard_rejects_ragged():
    with pytest.raises(ValueError):
        hadamard_sq_bound([(Fraction(1),), (Fraction(1), Fraction(2))])


@given(square_matrices())
@settings(max_examples=150)
def test_hadamard_bounds_squared_determinant(m):
    cols = [m.column(j) for j in range(m.cols)]
    assert det_exact(m) ** 2 <= hadamard_sq_bound(cols)
