"""Tests for custom exceptions."""

import pytest

from src.utils.exceptions import (
    ConfigurationError,
    CutoffTooSmallError,
    GaussCapError,
    InvalidArgumentError,
    InvalidDilationError,
    NumericFailureError,
    PerturbationRejectedError,
    UnsupportedChannelError,
)


class TestGaussCapError:
    """Tests for GaussCapError base exception."""

    def test_basic_error(self):
        error = GaussCapError("Test error")
        assert error.message == "Test error"
        assert error.error_code is None
        assert str(error) == "Test error"

    def test_error_with_code(self):
        error = GaussCapError("Test error", "TEST_CODE")
        assert error.error_code == "TEST_CODE"


class TestInvalidArgumentError:
    """Tests for InvalidArgumentError."""

    def test_is_value_error(self):
        """Callers catching ValueError also see argument errors."""
        error = InvalidArgumentError("k must be nonnegative")
        assert isinstance(error, GaussCapError)
        assert isinstance(error, ValueError)
        assert error.error_code == "INVALID_ARGUMENT"

    def test_can_be_caught_as_value_error(self):
        with pytest.raises(ValueError, match="bad"):
            raise InvalidArgumentError("bad")


class TestNumericFailureError:
    def test_carries_condition_and_best(self):
        error = NumericFailureError("ill-conditioned", condition=1e9, best=("state", 1.5))
        assert error.condition == 1e9
        assert error.best == ("state", 1.5)
        assert error.error_code == "NUMERIC_FAILURE"

    def test_defaults(self):
        error = NumericFailureError()
        assert error.condition is None
        assert error.best is None


class TestCutoffTooSmallError:
    """Tests for CutoffTooSmallError."""

    def test_carries_required_cutoff(self):
        error = CutoffTooSmallError("leak", required_cutoff=27, leak=0.03)
        assert error.required_cutoff == 27
        assert error.leak == 0.03
        assert error.error_code == "CUTOFF_TOO_SMALL"


class TestRemainingErrors:
    """Default messages and codes of the remaining error kinds."""

    @pytest.mark.parametrize(
        ("error_class", "code"),
        [
            (InvalidDilationError, "INVALID_DILATION"),
            (UnsupportedChannelError, "UNSUPPORTED_CHANNEL"),
            (PerturbationRejectedError, "PERTURBATION_REJECTED"),
            (ConfigurationError, "CONFIG_ERROR"),
        ],
    )
    def test_codes(self, error_class, code):
        error = error_class()
        assert isinstance(error, GaussCapError)
        assert error.error_code == code
        assert error.message

    def test_perturbation_rejected_keeps_seed(self):
        assert PerturbationRejectedError("no fit", seed=7).seed == 7
