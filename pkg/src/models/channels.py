"""Gaussian channel value types."""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from src.models.phase_space import SymplecticForm, frozen_array
from src.utils.exceptions import InvalidArgumentError, UnsupportedChannelError
from src.utils.validation import validate_skew_symmetric, validate_symmetric


def _validate_psd(matrix: NDArray[np.float64], name: str, scale: float) -> None:
    if matrix.size and np.linalg.eigvalsh(matrix)[0] < -1e-10 * max(scale, 1.0):
        raise InvalidArgumentError(f"{name} must be positive semidefinite")


@dataclass(frozen=True, eq=False)
class Dilation:
    """Environment of a channel: R' = K R + K_E R_E with the environment in a Gaussian state.

    ``env_form`` may be degenerate (a zero block describes a classical
    environment), so it is kept as a plain skew-symmetric matrix.
    """

    k_env: NDArray[np.float64]
    env_cov: NDArray[np.float64]
    env_form: NDArray[np.float64]

    def __post_init__(self) -> None:
        k_env = np.atleast_2d(np.asarray(self.k_env, dtype=float))
        env_cov = validate_symmetric(self.env_cov, "environment covariance")
        env_form = validate_skew_symmetric(self.env_form, "environment form")
        if env_cov.shape != env_form.shape or k_env.shape[1] != env_cov.shape[0]:
            raise InvalidArgumentError(
                f"Inconsistent dilation shapes: K_E {k_env.shape}, covariance "
                f"{env_cov.shape}, form {env_form.shape}"
            )
        # alpha_E - (i/2) Delta_E >= 0 also covers degenerate environment forms
        herm = env_cov - 0.5j * env_form
        if np.linalg.eigvalsh(herm)[0] < -1e-9 * max(1.0, float(np.max(np.abs(env_cov)))):
            raise InvalidArgumentError("environment state violates the uncertainty relation")
        object.__setattr__(self, "k_env", frozen_array(k_env))
        object.__setattr__(self, "env_cov", frozen_array(env_cov))
        object.__setattr__(self, "env_form", frozen_array(env_form))


@dataclass(frozen=True, eq=False)
class GaussianChannel:
    """Linear Bosonic channel with Gaussian factor f(z) = exp(-z.Y.z / 2).

    ``transposed`` marks the composition with transposition on the input,
    which flips the sign of the input form wherever Delta'' is formed. The
    map is then generally not completely positive. ``valid`` caches the
    complete-positivity test at construction; None means the test is not
    available for this channel (degenerate Delta'').
    """

    k: NDArray[np.float64]
    form_in: SymplecticForm
    form_out: SymplecticForm
    noise: NDArray[np.float64]
    transposed: bool = False
    dilation: Dilation | None = None
    valid: bool | None = field(init=False, default=None)

    def __post_init__(self) -> None:
        k = np.atleast_2d(np.asarray(self.k, dtype=float))
        noise = validate_symmetric(self.noise, "noise form Y")
        if k.shape != (self.form_out.dim, self.form_in.dim):
            raise InvalidArgumentError(
                f"K must be {self.form_out.dim}x{self.form_in.dim}, got {k.shape}"
            )
        if noise.shape != (self.form_out.dim, self.form_out.dim):
            raise InvalidArgumentError(
                f"Y must be {self.form_out.dim}x{self.form_out.dim}, got {noise.shape}"
            )
        _validate_psd(noise, "noise form Y", self.form_out.hbar)
        object.__setattr__(self, "k", frozen_array(k))
        object.__setattr__(self, "noise", frozen_array(noise))

        from src.services.gaussian_channel import compute_validity

        try:
            valid: bool | None = compute_validity(self)
        except UnsupportedChannelError:
            valid = None
        object.__setattr__(self, "valid", valid)

    @property
    def modes_in(self) -> int:
        return self.form_in.modes

    @property
    def modes_out(self) -> int:
        return self.form_out.modes


@dataclass(frozen=True, eq=False)
class NoiseDecomposition:
    """Normal-mode description of the noise operator rho with Tr(rho V(z)) = f(A z).

    Delta'' = A^-T Delta A^-1 for the canonical Delta; ``mode_gammas`` are the
    symplectic eigenvalues of A^T Y A, sorted descending. ``boundary`` flags a
    zero gamma (rho is then not trace class and its trace norm is infinite).
    """

    delta_pp: NDArray[np.float64]
    a: NDArray[np.float64]
    mode_gammas: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta_pp", frozen_array(self.delta_pp))
        object.__setattr__(self, "a", frozen_array(self.a))
        object.__setattr__(
            self, "mode_gammas", tuple(sorted((float(g) for g in self.mode_gammas), reverse=True))
        )

    @property
    def boundary(self) -> bool:
        return any(g == 0.0 for g in self.mode_gammas)
