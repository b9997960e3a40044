"""Tests for validation utilities."""

import numpy as np
import pytest

from src.utils.exceptions import InvalidArgumentError
from src.utils.validation import (
    validate_hermitian,
    validate_nonnegative,
    validate_positive,
    validate_positive_int,
    validate_range,
    validate_same_shape,
    validate_skew_symmetric,
    validate_square,
    validate_symmetric,
)


class TestScalarValidators:
    """Tests for scalar argument checks."""

    def test_positive_int(self):
        assert validate_positive_int(np.int64(5), "cutoff") == 5

    @pytest.mark.parametrize("value", [0, -3])
    def test_positive_int_rejects_nonpositive(self, value):
        with pytest.raises(InvalidArgumentError, match="cutoff must be positive"):
            validate_positive_int(value, "cutoff")

    @pytest.mark.parametrize("value", [2.0, True, "3"])
    def test_positive_int_rejects_non_integers(self, value):
        with pytest.raises(InvalidArgumentError, match="must be an integer"):
            validate_positive_int(value, "cutoff")

    def test_positive(self):
        assert validate_positive(0.5, "gamma") == 0.5

    @pytest.mark.parametrize("value", [0.0, -1.0, float("nan"), float("inf")])
    def test_positive_rejects(self, value):
        with pytest.raises(InvalidArgumentError, match="gamma must be positive"):
            validate_positive(value, "gamma")

    def test_nonnegative_accepts_zero(self):
        assert validate_nonnegative(0, "nc") == 0.0

    def test_nonnegative_rejects_negative(self):
        with pytest.raises(InvalidArgumentError, match="nc must be nonnegative"):
            validate_nonnegative(-1e-3, "nc")

    def test_range(self):
        assert validate_range(0.5, "k", 0.0, 1.0) == 0.5
        with pytest.raises(InvalidArgumentError, match=r"k must lie in \[0.0, 1.0\]"):
            validate_range(1.5, "k", 0.0, 1.0)


class TestMatrixValidators:
    """Tests for square, symmetric, skew-symmetric and Hermitian checks."""

    def test_square_rejects_rectangular(self):
        with pytest.raises(InvalidArgumentError, match="alpha"):
            validate_square(np.zeros((2, 3)), "alpha")

    def test_symmetric_returns_exact_symmetrization(self):
        matrix = np.array([[1.0, 0.5 + 1e-13], [0.5, 2.0]])
        result = validate_symmetric(matrix, "alpha")
        assert np.array_equal(result, result.T)

    def test_symmetric_rejects_asymmetric(self):
        with pytest.raises(InvalidArgumentError, match="alpha is not symmetric"):
            validate_symmetric(np.array([[1.0, 1.0], [0.0, 1.0]]), "alpha")

    def test_skew_symmetric(self):
        result = validate_skew_symmetric(np.array([[0.0, 1.0], [-1.0, 0.0]]), "Delta")
        assert np.array_equal(result, -result.T)

    def test_skew_symmetric_rejects_symmetric(self):
        with pytest.raises(InvalidArgumentError, match="Delta is not skew-symmetric"):
            validate_skew_symmetric(np.eye(2), "Delta")

    def test_hermitian(self):
        matrix = np.array([[1.0, 1j], [-1j, 2.0]])
        result = validate_hermitian(matrix, "N")
        assert np.array_equal(result, result.conj().T)

    def test_hermitian_rejects_non_hermitian(self):
        with pytest.raises(InvalidArgumentError, match="N is not Hermitian"):
            validate_hermitian(np.array([[1.0, 1j], [1j, 2.0]]), "N")

    def test_same_shape(self):
        validate_same_shape(np.zeros(2), np.ones(2), "means")
        with pytest.raises(InvalidArgumentError, match="Dimension mismatch in means"):
            validate_same_shape(np.zeros(2), np.ones(4), "means")
