"""Argument validation utilities shared by the numerics modules."""

from typing import Final

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.utils.exceptions import InvalidArgumentError

# Relative tolerance for symmetry and skew-symmetry checks
SYMMETRY_TOLERANCE: Final[float] = 1e-10
HERMITIAN_TOLERANCE: Final[float] = 1e-12


def validate_positive_int(value: int, name: str) -> int:
    """
    Validate a strictly positive integer.

    Args:
        value: Candidate value
        name: Argument name used in the error message

    Returns:
        The value as int

    Raises:
        InvalidArgumentError: If value is not an integer or is not positive
    """
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InvalidArgumentError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise InvalidArgumentError(f"{name} must be positive, got {value}")
    return int(value)


def validate_positive(value: float, name: str) -> float:
    """
    Validate a strictly positive finite real.

    Raises:
        InvalidArgumentError: If value is not finite or not positive
    """
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise InvalidArgumentError(f"{name} must be positive, got {value}")
    return value


def validate_nonnegative(value: float, name: str) -> float:
    """
    Validate a nonnegative finite real.

    Raises:
        InvalidArgumentError: If value is negative or not finite
    """
    value = float(value)
    if not np.isfinite(value) or value < 0:
        raise InvalidArgumentError(f"{name} must be nonnegative, got {value}")
    return value


def validate_range(value: float, name: str, low: float, high: float) -> float:
    """Validate that low <= value <= high."""
    value = float(value)
    if not (low <= value <= high):
        raise InvalidArgumentError(f"{name} must lie in [{low}, {high}], got {value}")
    return value


def validate_square(matrix: ArrayLike, name: str, dtype: type = float) -> NDArray[np.generic]:
    """
    Coerce to a 2-D square array.

    Args:
        matrix: Array-like input
        name: Argument name used in the error message
        dtype: Target dtype (float or complex)

    Returns:
        A fresh square ndarray

    Raises:
        InvalidArgumentError: If the input is not square or contains non-finite entries
    """
    arr = np.array(matrix, dtype=dtype)
    errors = []
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        errors.append(f"{name} must be a square matrix, got shape {arr.shape}")
    elif not np.all(np.isfinite(arr)):
        errors.append(f"{name} contains non-finite entries")
    if errors:
        raise InvalidArgumentError("; ".join(errors))
    return arr


def _asymmetry(arr: NDArray[np.generic], sign: float) -> float:
    scale = max(float(np.max(np.abs(arr))), 1.0)
    return float(np.max(np.abs(arr - sign * arr.T.conj()))) / scale if arr.size else 0.0


def validate_symmetric(
    matrix: ArrayLike, name: str, tolerance: float = SYMMETRY_TOLERANCE
) -> NDArray[np.float64]:
    """
    Validate a real symmetric matrix to relative tolerance.

    Returns:
        The exactly symmetrized matrix

    Raises:
        InvalidArgumentError: If the matrix is not square or not symmetric
    """
    arr = validate_square(matrix, name)
    if _asymmetry(arr, 1.0) > tolerance:
        raise InvalidArgumentError(f"{name} is not symmetric within {tolerance:g}")
    return np.asarray((arr + arr.T) / 2, dtype=float)


def validate_skew_symmetric(
    matrix: ArrayLike, name: str, tolerance: float = SYMMETRY_TOLERANCE
) -> NDArray[np.float64]:
    """
    Validate a real skew-symmetric matrix to relative tolerance.

    Returns:
        The exactly antisymmetrized matrix

    Raises:
        InvalidArgumentError: If the matrix is not square or not skew-symmetric
    """
    arr = validate_square(matrix, name)
    if _asymmetry(arr, -1.0) > tolerance:
        raise InvalidArgumentError(f"{name} is not skew-symmetric within {tolerance:g}")
    return np.asarray((arr - arr.T) / 2, dtype=float)


def validate_hermitian(
    matrix: ArrayLike, name: str, tolerance: float = HERMITIAN_TOLERANCE
) -> NDArray[np.complex128]:
    """
    Validate a complex Hermitian matrix.

    Returns:
        The exactly Hermitized matrix

    Raises:
        InvalidArgumentError: If the matrix is not square or not Hermitian
    """
    arr = validate_square(matrix, name, dtype=complex)
    if _asymmetry(arr, 1.0) > tolerance:
        raise InvalidArgumentError(f"{name} is not Hermitian within {tolerance:g}")
    return np.asarray((arr + arr.conj().T) / 2, dtype=complex)


def validate_same_shape(a: NDArray[np.generic], b: NDArray[np.generic], what: str) -> None:
    """Raise InvalidArgumentError when two arrays differ in shape."""
    if a.shape != b.shape:
        raise InvalidArgumentError(f"Dimension mismatch in {what}: {a.shape} vs {b.shape}")
