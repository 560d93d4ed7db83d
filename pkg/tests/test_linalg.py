from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from bendercuts.linalg import (affine_rank, as_fraction, as_vector, dot,
                               matrix_rank, nullspace_basis, solve_square)

ints = st.integers(-6, 6)


def frac_matrix(rows, cols):
    return st.lists(
        st.lists(ints.map(F), min_size=cols, max_size=cols).map(tuple),
        min_size=rows, max_size=rows).map(tuple)


def test_as_fraction_rejects_floats():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction(3) == F(3)
    assert as_fraction(F(2, 7)) == F(2, 7)


def test_as_vector():
    assert as_vector([1, F(1, 2)]) == (F(1), F(1, 2))


def test_dot():
    assert dot((F(1), F(2)), (F(3), F(4))) == F(11)


def test_matrix_rank_known():
    assert matrix_rank(((F(1), F(2)), (F(2), F(4)))) == 1
    assert matrix_rank(((F(1), F(0)), (F(0), F(1)))) == 2
    assert matrix_rank(()) == 0


def test_affine_rank_degenerate():
    assert affine_rank([]) == -1
    assert affine_rank([(F(3), F(4))]) == 0
    assert affine_rank([(F(0),), (F(1),)]) == 1
    # three collinear points still span a line
    assert affine_rank([(F(0), F(0)), (F(1), F(1)), (F(2), F(2))]) == 1


def test_solve_square_known():
    sol = solve_square(((F(2), F(0)), (F(0), F(4))), (F(6), F(8)))
    assert sol == (F(3), F(2))
    assert solve_square(((F(1), F(1)), (F(2), F(2))), (F(1), F(2))) is None


def test_nullspace_of_empty_row_set():
    basis = nullspace_basis((), 2)
    assert len(basis) == 2
    assert matrix_rank(basis) == 2


@given(frac_matrix(3, 3), st.lists(ints.map(F), min_size=3, max_size=3).map(tuple))
def test_solve_square_verifies(matrix, rhs):
    sol = solve_square(matrix, rhs)
    if sol is not None:
        assert tuple(dot(row, sol) for row in matrix) == rhs


@given(frac_matrix(2, 4))
def test_nullspace_annihilates(rows):
    basis = nullspace_basis(rows, 4)
    for v in basis:
        assert all(dot(row, v) == 0 for row in rows)
    assert len(basis) == 4 - matrix_rank(rows)


@given(frac_matrix(3, 2))
def test_rank_bounded(rows):
    r = matrix_rank(rows)
    assert 0 <= r <= 2
