"""Real-matrix substrate: commutation matrices, symplectic spectra and functional calculus."""

from typing import Final, overload

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from src.models.phase_space import CovarianceMatrix, SymplecticForm, SymplecticSpectrum
from src.types.common import MatrixFunctionName, UncertaintyReport
from src.utils.exceptions import InvalidArgumentError, NumericFailureError
from src.utils.validation import validate_positive, validate_positive_int, validate_square

# Floor applied to alpha eigenvalues before the square root, in units of hbar
SPECTRUM_RIDGE: Final[float] = 1e-12
# Reported gammas below this are exact zeros
ZERO_GAMMA: Final[float] = 1e-10
PHYSICAL_TOLERANCE: Final[float] = 1e-9
# Eigenvector condition number above which a matrix counts as defective
MAX_EIGENVECTOR_CONDITION: Final[float] = 1e8

_BLOCK = np.array([[0.0, 1.0], [-1.0, 0.0]])

CovarianceLike = CovarianceMatrix | NDArray[np.float64]


def _cov_array(alpha: CovarianceLike) -> NDArray[np.float64]:
    if isinstance(alpha, CovarianceMatrix):
        return alpha.matrix
    return CovarianceMatrix(np.asarray(alpha, dtype=float)).matrix


def canonical_form(s: int, hbar: float = 1.0) -> SymplecticForm:
    """
    Block-diagonal commutation matrix with 2x2 blocks [[0, hbar], [-hbar, 0]].

    Args:
        s: Number of modes
        hbar: Planck constant convention

    Returns:
        The canonical SymplecticForm

    Raises:
        InvalidArgumentError: If s or hbar is not positive
    """
    s = validate_positive_int(s, "s")
    hbar = validate_positive(hbar, "hbar")
    return SymplecticForm(modes=s, hbar=hbar, matrix=np.kron(np.eye(s), hbar * _BLOCK))


def symplectic_spectrum(alpha: CovarianceLike, delta: SymplecticForm) -> SymplecticSpectrum:
    """
    Moduli gamma_j of the eigenvalue pairs +-i gamma_j of Delta^-1 alpha.

    The hot path takes singular values of the antisymmetric matrix
    alpha^1/2 Delta^-1 alpha^1/2, which shares its spectrum with Delta^-1 alpha.
    Covariances that are not positive semidefinite go through the general
    eigenroutine instead.

    Raises:
        InvalidArgumentError: On dimension mismatch
        NumericFailureError: If LAPACK does not converge
    """
    a = _cov_array(alpha)
    if a.shape != delta.matrix.shape:
        raise InvalidArgumentError(
            f"Dimension mismatch: covariance {a.shape} vs symplectic form {delta.matrix.shape}"
        )
    try:
        w, v = scipy.linalg.eigh(a)
        ridge = SPECTRUM_RIDGE * delta.hbar
        if w[0] < -ridge * max(1.0, float(np.max(np.abs(w))) / delta.hbar):
            return symplectic_spectrum_eig(a, delta)
        sqrt_alpha = (v * np.sqrt(np.maximum(w, ridge))) @ v.T
        kernel = sqrt_alpha @ delta.inverse @ sqrt_alpha
        singular_values = scipy.linalg.svdvals((kernel - kernel.T) / 2)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericFailureError(f"Symplectic spectrum did not converge: {e!s}") from e
    gammas = np.sort(singular_values)[::-1][0::2]
    gammas[gammas < ZERO_GAMMA] = 0.0
    return SymplecticSpectrum(tuple(float(g) for g in gammas))


def symplectic_spectrum_eig(alpha: CovarianceLike, delta: SymplecticForm) -> SymplecticSpectrum:
    """Cross-check path: eigenvalue moduli of Delta^-1 alpha from a general eigensolver."""
    a = _cov_array(alpha)
    if a.shape != delta.matrix.shape:
        raise InvalidArgumentError(
            f"Dimension mismatch: covariance {a.shape} vs symplectic form {delta.matrix.shape}"
        )
    try:
        eigenvalues = scipy.linalg.eigvals(delta.inverse @ a)
    except np.linalg.LinAlgError as e:
        raise NumericFailureError(f"Eigenroutine did not converge: {e!s}") from e
    moduli = np.sort(np.abs(eigenvalues))[::-1][0::2]
    moduli[moduli < ZERO_GAMMA] = 0.0
    return SymplecticSpectrum(tuple(float(g) for g in moduli))


def check_uncertainty(
    alpha: CovarianceLike, delta: SymplecticForm, tolerance: float = PHYSICAL_TOLERANCE
) -> UncertaintyReport:
    """Report whether alpha - (i/2) Delta >= 0, i.e. every gamma_j >= 1/2 - tolerance."""
    spectrum = symplectic_spectrum(alpha, delta)
    min_gamma = spectrum.min_gamma
    return {"valid": min_gamma >= 0.5 - tolerance, "min_gamma": min_gamma}


def matrix_function(m: ArrayLike, f: MatrixFunctionName) -> NDArray[np.float64]:
    """
    Apply a scalar function through the eigendecomposition, S f(diag) S^-1.

    Args:
        m: Square real matrix, diagonalizable within tolerance
        f: "abs" or "sqrt" (principal branch)

    Returns:
        Real matrix sharing the eigenvectors of m

    Raises:
        InvalidArgumentError: On unknown f or a result that is not real
        NumericFailureError: If m is defective or nearly so
    """
    if f not in ("abs", "sqrt"):
        raise InvalidArgumentError(f"Unknown matrix function: {f!r}")
    arr = validate_square(m, "matrix")
    if arr.size == 0:
        return np.zeros_like(arr, dtype=float)
    try:
        w, s = scipy.linalg.eig(arr)
    except np.linalg.LinAlgError as e:
        raise NumericFailureError(f"Eigenroutine did not converge: {e!s}") from e
    condition = float(np.linalg.cond(s))
    if not np.isfinite(condition) or condition > MAX_EIGENVECTOR_CONDITION:
        raise NumericFailureError(
            f"Matrix is defective or nearly so (eigenvector condition {condition:.3g})",
            condition=condition,
        )
    scale = max(float(np.max(np.abs(w))), 1.0)
    if f == "abs":
        fw = np.abs(w).astype(complex)
    else:
        # Round-off can push exact zeros slightly negative
        w = np.where((np.abs(w.imag) <= 1e-12 * scale) & (np.abs(w.real) <= 1e-12 * scale), 0, w)
        fw = np.sqrt(w.astype(complex))
    result = np.linalg.solve(s.T, (s * fw).T).T
    if np.max(np.abs(result.imag)) > 1e-8 * max(float(np.max(np.abs(result.real))), 1.0):
        raise InvalidArgumentError(f"{f}(M) is not real for this spectrum")
    return np.asarray(result.real, dtype=float)


@overload
def direct_sum(a: SymplecticForm, b: SymplecticForm) -> SymplecticForm: ...


@overload
def direct_sum(a: CovarianceMatrix, b: CovarianceMatrix) -> CovarianceMatrix: ...


def direct_sum(
    a: SymplecticForm | CovarianceMatrix, b: SymplecticForm | CovarianceMatrix
) -> SymplecticForm | CovarianceMatrix:
    """
    Block-diagonal stacking of two forms or two covariance matrices.

    Raises:
        InvalidArgumentError: On mixed kinds or mismatched hbar
    """
    if isinstance(a, SymplecticForm) and isinstance(b, SymplecticForm):
        if not np.isclose(a.hbar, b.hbar, rtol=1e-12, atol=0.0):
            raise InvalidArgumentError(f"hbar mismatch in direct sum: {a.hbar} vs {b.hbar}")
        return SymplecticForm(
            modes=a.modes + b.modes,
            hbar=a.hbar,
            matrix=scipy.linalg.block_diag(a.matrix, b.matrix),
        )
    if isinstance(a, CovarianceMatrix) and isinstance(b, CovarianceMatrix):
        return CovarianceMatrix(scipy.linalg.block_diag(a.matrix, b.matrix))
    raise InvalidArgumentError(
        f"direct_sum needs two operands of the same kind, got {type(a).__name__} "
        f"and {type(b).__name__}"
    )


def random_symplectic(
    form: SymplecticForm, rng: np.random.Generator, scale: float = 0.5
) -> NDArray[np.float64]:
    """Random S with S Delta S^T = Delta, generated as expm(Delta H / hbar) for symmetric H."""
    h = rng.normal(scale=scale, size=(form.dim, form.dim))
    h = (h + h.T) / 2
    return np.asarray(scipy.linalg.expm(form.matrix @ h / form.hbar), dtype=float)
