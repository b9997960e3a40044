"""Gaussian state value types."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from src.models.phase_space import CovarianceMatrix, SymplecticForm, frozen_array
from src.utils.exceptions import InvalidArgumentError
from src.utils.validation import validate_hermitian


@dataclass(frozen=True, eq=False)
class GaussianState:
    """State with characteristic function exp(i m.z - z.alpha.z / 2).

    Construction enforces the uncertainty relation alpha - (i/2) Delta >= 0.
    """

    mean: NDArray[np.float64]
    cov: CovarianceMatrix
    form: SymplecticForm

    def __post_init__(self) -> None:
        from src.services.symplectic import check_uncertainty

        mean = np.asarray(self.mean, dtype=float).reshape(-1)
        if self.cov.dim != self.form.dim:
            raise InvalidArgumentError(
                f"covariance is {self.cov.dim}x{self.cov.dim} but the form has "
                f"dimension {self.form.dim}"
            )
        if mean.shape != (self.form.dim,):
            raise InvalidArgumentError(
                f"mean must have length {self.form.dim}, got {mean.shape[0]}"
            )
        report = check_uncertainty(self.cov, self.form)
        if not report["valid"]:
            raise InvalidArgumentError(
                f"covariance violates the uncertainty relation (min gamma "
                f"{report['min_gamma']:.6g} < 1/2)"
            )
        object.__setattr__(self, "mean", frozen_array(mean))

    @property
    def modes(self) -> int:
        return self.form.modes

    @property
    def alpha(self) -> NDArray[np.float64]:
        return self.cov.matrix


@dataclass(frozen=True, eq=False)
class GaugeInvariantState:
    """Gauge-invariant state described by its photon-number matrix N = Tr(a rho a^dagger)."""

    n: NDArray[np.complex128]

    def __post_init__(self) -> None:
        n = validate_hermitian(np.atleast_2d(self.n), "photon-number matrix")
        eigenvalues = np.linalg.eigvalsh(n)
        if eigenvalues.size and eigenvalues[0] < -1e-12 * max(1.0, float(eigenvalues[-1])):
            raise InvalidArgumentError("photon-number matrix must be positive semidefinite")
        object.__setattr__(self, "n", frozen_array(n, dtype=complex))

    @property
    def modes(self) -> int:
        return int(self.n.shape[0])
