from fractions import Fraction

import numpy as np
import pytest

from engine.exact import ExactMatrix, bareiss_rank


def test_bareiss_rank_small_cases():
    assert bareiss_rank([]) == 0
    assert bareiss_rank([[0, 0], [0, 0]]) == 0
    assert bareiss_rank([[1, 2], [2, 4]]) == 1
    assert bareiss_rank([[2, 1, 0], [1, 2, 1], [0, 1, 2]]) == 3


def test_rank_and_nullity_of_singular_laplacian():
    # path graph Laplacian: kernel spanned by the all-ones vector
    m = ExactMatrix.from_rows([[1, -1, 0], [-1, 2, -1], [0, -1, 1]])
    assert m.rank() == 2
    assert m.nullity() == 1
    assert m.shift_diagonal(-3).nullity() == 1
    assert m.shift_diagonal(-2).nullity() == 0


def test_fraction_entries_are_cleared():
    m = ExactMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert m.rank() == 1
    assert not m.is_integral()
    assert ExactMatrix.from_rows([[Fraction(4, 2)]])[0, 0] == 2


def test_arithmetic_matches_numpy():
    a = ExactMatrix.from_rows([[1, 2], [3, 4], [5, 6]])
    b = ExactMatrix.from_rows([[1, 0, -1], [2, 1, 0]])
    product = a @ b
    assert product.shape == (3, 3)
    assert np.array_equal(product.to_numpy(), a.to_numpy() @ b.to_numpy())
    assert (a.T @ a).is_symmetric()
    assert (a - a).is_zero()
    assert (a + a) == a.scale(2)
    assert ExactMatrix.identity(3).trace() == 3


def test_empty_shapes():
    m = ExactMatrix(0, 2)
    assert m.shape == (0, 2)
    assert m.rank() == 0
    assert m.nullity() == 2
    assert (m.T @ m).shape == (2, 2)
    assert (m.T @ m).is_zero()
    assert m.to_numpy().shape == (0, 2)


def test_gershgorin_bound():
    m = ExactMatrix.from_rows([[2, -1], [-1, 3]])
    assert m.gershgorin_bound() == 4
    assert ExactMatrix(0, 0).gershgorin_bound() == 0


def test_shape_errors():
    with pytest.raises(ValueError):
        ExactMatrix(2, 2, [[1, 2]])
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1, 2]]) @ ExactMatrix.from_rows([[1, 2]])
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1, 2]]).shift_diagonal(1)
