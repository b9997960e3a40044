"""Truncated number-basis value types for the Fock-space oracle."""

from dataclasses import dataclass
from typing import Final

import numpy as np
from numpy.typing import NDArray

from src.models.phase_space import frozen_array
from src.utils.exceptions import InvalidArgumentError
from src.utils.validation import (
    validate_hermitian,
    validate_nonnegative,
    validate_positive_int,
    validate_square,
)

EIGENVALUE_FLOOR: Final[float] = -1e-10


@dataclass(frozen=True, eq=False)
class FockDensity:
    """Density matrix on ``modes`` modes, each truncated to |0>..|cutoff-1>.

    Multimode matrices use row-major (mode 1, mode 2, ...) index order. The
    trace may fall short of 1; the shortfall is the truncation ``leak`` and
    is never renormalized away.
    """

    cutoff: int
    matrix: NDArray[np.complex128]
    modes: int = 1

    def __post_init__(self) -> None:
        cutoff = validate_positive_int(self.cutoff, "cutoff")
        modes = validate_positive_int(self.modes, "modes")
        matrix = validate_hermitian(self.matrix, "Fock density")
        dim = cutoff**modes
        if matrix.shape != (dim, dim):
            raise InvalidArgumentError(
                f"Fock density must be {dim}x{dim} for cutoff {cutoff} on {modes} mode(s), "
                f"got {matrix.shape}"
            )
        eigenvalues = np.linalg.eigvalsh(matrix)
        if eigenvalues[0] < EIGENVALUE_FLOOR:
            raise InvalidArgumentError(
                f"Fock density has eigenvalue {eigenvalues[0]:.3g} below {EIGENVALUE_FLOOR}"
            )
        if np.trace(matrix).real > 1.0 + 1e-10:
            raise InvalidArgumentError("Fock density has trace above 1")
        object.__setattr__(self, "matrix", frozen_array(matrix, dtype=complex))

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def leak(self) -> float:
        return max(0.0, 1.0 - self.trace)


@dataclass(frozen=True, eq=False)
class FockOperator:
    """Single-mode operator matrix on the truncated number basis."""

    cutoff: int
    matrix: NDArray[np.complex128]

    def __post_init__(self) -> None:
        cutoff = validate_positive_int(self.cutoff, "cutoff")
        matrix = validate_square(self.matrix, "Fock operator", complex)
        if matrix.shape[0] != cutoff:
            raise InvalidArgumentError(
                f"operator must be {cutoff}x{cutoff}, got {matrix.shape}"
            )
        object.__setattr__(self, "matrix", frozen_array(matrix, dtype=complex))


@dataclass(frozen=True)
class OracleChannelSpec:
    """Attenuation by k <= 1 followed by classical noise of variance nc.

    Amplification has no Fock-space dilation here.
    """

    k: float
    nc: float = 0.0

    def __post_init__(self) -> None:
        k = validate_nonnegative(self.k, "k")
        if k > 1:
            raise InvalidArgumentError(f"the Fock oracle covers k <= 1 only, got k={k}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "nc", validate_nonnegative(self.nc, "nc"))

    @property
    def is_identity(self) -> bool:
        return self.k == 1.0 and self.nc == 0.0
