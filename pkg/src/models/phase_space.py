"""Immutable phase-space value types: commutation matrices, covariances, spectra."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.utils.exceptions import InvalidArgumentError
from src.utils.validation import (
    validate_positive,
    validate_positive_int,
    validate_skew_symmetric,
    validate_symmetric,
)

# Smallest singular value (relative to the largest) accepted as invertible
_INVERTIBILITY_TOLERANCE = 1e-12


def frozen_array(values: ArrayLike, dtype: type = float) -> NDArray[np.generic]:
    """Copy into a read-only ndarray."""
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SymplecticForm:
    """Commutation matrix of 2s canonical variables together with its hbar convention.

    Any nondegenerate skew-symmetric matrix is accepted; ``canonical_form`` in
    ``src.services.symplectic`` builds the block-diagonal one.
    """

    modes: int
    hbar: float
    matrix: NDArray[np.float64]

    def __post_init__(self) -> None:
        modes = validate_positive_int(self.modes, "modes")
        hbar = validate_positive(self.hbar, "hbar")
        matrix = validate_skew_symmetric(self.matrix, "symplectic form")
        if matrix.shape != (2 * modes, 2 * modes):
            raise InvalidArgumentError(
                f"symplectic form for {modes} mode(s) must be {2 * modes}x{2 * modes}, "
                f"got {matrix.shape}"
            )
        singular_values = np.linalg.svd(matrix, compute_uv=False)
        if singular_values[-1] <= _INVERTIBILITY_TOLERANCE * max(singular_values[0], hbar):
            raise InvalidArgumentError("symplectic form is degenerate")
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "hbar", hbar)
        object.__setattr__(self, "matrix", frozen_array(matrix))

    @classmethod
    def from_matrix(cls, matrix: ArrayLike, hbar: float = 1.0) -> "SymplecticForm":
        """Wrap an arbitrary nondegenerate skew-symmetric matrix."""
        arr = np.asarray(matrix, dtype=float)
        if arr.ndim != 2 or arr.shape[0] % 2:
            raise InvalidArgumentError(f"symplectic form must be 2s x 2s, got {arr.shape}")
        return cls(modes=arr.shape[0] // 2, hbar=hbar, matrix=arr)

    @property
    def dim(self) -> int:
        return 2 * self.modes

    @cached_property
    def inverse(self) -> NDArray[np.float64]:
        inv = np.linalg.inv(self.matrix)
        inv.setflags(write=False)
        return inv

    def negated(self) -> "SymplecticForm":
        """The reflected form -Delta, used for purification references."""
        return SymplecticForm(modes=self.modes, hbar=self.hbar, matrix=-self.matrix)

    def allclose(self, other: "SymplecticForm", atol: float = 1e-10) -> bool:
        return (
            self.matrix.shape == other.matrix.shape
            and bool(np.allclose(self.matrix, other.matrix, rtol=0.0, atol=atol * self.hbar))
        )


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Real symmetric second-moment matrix, in units of hbar."""

    matrix: NDArray[np.float64]

    def __post_init__(self) -> None:
        matrix = validate_symmetric(self.matrix, "covariance matrix")
        if matrix.shape[0] % 2:
            raise InvalidArgumentError(
                f"covariance matrix must have even dimension, got {matrix.shape}"
            )
        object.__setattr__(self, "matrix", frozen_array(matrix))

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def modes(self) -> int:
        return self.dim // 2


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Normal-mode parameters gamma_j, one per eigenvalue pair +-i gamma_j, sorted descending."""

    gammas: tuple[float, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted((float(g) for g in self.gammas), reverse=True))
        if any(g < 0 for g in ordered):
            raise InvalidArgumentError("symplectic eigenvalues must be nonnegative")
        object.__setattr__(self, "gammas", ordered)

    def __len__(self) -> int:
        return len(self.gammas)

    @property
    def min_gamma(self) -> float:
        return self.gammas[-1]

    def as_array(self) -> NDArray[np.float64]:
        return np.array(self.gammas, dtype=float)
