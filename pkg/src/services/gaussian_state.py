"""Gaussian states: entropy, purity, purification and the gauge-invariant correspondence."""

import math
from collections.abc import Sequence
from typing import Final

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from src.models.config import get_config
from src.models.phase_space import CovarianceMatrix, SymplecticForm
from src.models.states import GaugeInvariantState, GaussianState
from src.services.symplectic import (
    PHYSICAL_TOLERANCE,
    canonical_form,
    direct_sum,
    symplectic_spectrum,
)
from src.utils.exceptions import InvalidArgumentError
from src.utils.validation import validate_nonnegative, validate_positive

G_ZERO_CUTOFF: Final[float] = 1e-12
G_SERIES_CUTOFF: Final[float] = 1e-6


def _log_base(base: float | None) -> float:
    return math.log(get_config().log_base_value if base is None else base)


def g_function(x: float, base: float | None = None) -> float:
    """
    Entropy of a thermal mode with mean photon number x, (x+1)log(x+1) - x log x.

    Args:
        x: Mean photon number, x >= 0
        base: Logarithm base; defaults to the configured base

    Returns:
        g(x) in the chosen base

    Raises:
        InvalidArgumentError: If x is negative
    """
    x = validate_nonnegative(x, "x")
    if x < G_ZERO_CUTOFF:
        return 0.0
    if x < G_SERIES_CUTOFF:
        nats = x - x * math.log(x) + x * x / 2
    else:
        # Same as (x+1) log(x+1) - x log x without the cancellation at large x
        nats = math.log1p(x) + x * math.log1p(1.0 / x)
    return nats / _log_base(base)


def entropy_from_gammas(gammas: Sequence[float], base: float | None = None) -> float:
    """Sum of g(gamma_j - 1/2) with round-off below 1/2 clipped."""
    total = 0.0
    for gamma in gammas:
        shifted = gamma - 0.5
        if shifted < -PHYSICAL_TOLERANCE:
            raise InvalidArgumentError(f"normal mode gamma={gamma:.6g} is below 1/2")
        total += g_function(max(shifted, 0.0), base)
    return total


def entropy(state: GaussianState, base: float | None = None) -> float:
    """von Neumann entropy, sum over normal modes of g(gamma_j - 1/2)."""
    return entropy_from_gammas(symplectic_spectrum(state.cov, state.form).gammas, base)


def is_pure(state: GaussianState, tolerance: float = PHYSICAL_TOLERANCE) -> bool:
    """True iff every gamma_j equals 1/2 within tolerance."""
    gammas = symplectic_spectrum(state.cov, state.form).gammas
    return all(abs(g - 0.5) <= tolerance for g in gammas)


def purification_block(cov: CovarianceMatrix, form: SymplecticForm) -> np.ndarray:
    """
    Off-diagonal block beta = Delta sqrt(-(Delta^-1 alpha)^2 - I/4).

    With K = alpha^1/2 Delta^-1 alpha^1/2 antisymmetric, the radicand equals
    alpha^-1/2 (K^T K - I/4) alpha^1/2, so the root is taken on the symmetric
    K^T K - I/4 with a Hermitian eigensolver. Pure normal modes give repeated
    zero eigenvalues there, which eigh handles without loss of accuracy.

    Raises:
        InvalidArgumentError: If alpha is not positive definite
    """
    w, v = scipy.linalg.eigh(cov.matrix)
    if w[0] <= 0:
        raise InvalidArgumentError("purification needs a positive definite covariance")
    sqrt_alpha = (v * np.sqrt(w)) @ v.T
    inv_sqrt_alpha = (v / np.sqrt(w)) @ v.T
    kernel = sqrt_alpha @ form.inverse @ sqrt_alpha
    kernel = (kernel - kernel.T) / 2
    gram = kernel.T @ kernel - np.eye(form.dim) / 4
    mu, u = scipy.linalg.eigh((gram + gram.T) / 2)
    root = (u * np.sqrt(np.clip(mu, 0.0, None))) @ u.T
    return np.asarray(form.matrix @ inv_sqrt_alpha @ root @ sqrt_alpha, dtype=float)


def purify(state: GaussianState) -> GaussianState:
    """
    Pure Gaussian state on 2s modes whose first factor is the input.

    The reference uses the reflected form -Delta and carries zero mean; the
    input mean stays on the first factor.
    """
    beta = purification_block(state.cov, state.form)
    alpha = state.alpha
    joint = np.block([[alpha, beta], [beta.T, alpha]])
    return GaussianState(
        mean=np.concatenate([state.mean, np.zeros(state.form.dim)]),
        cov=CovarianceMatrix(joint),
        form=direct_sum(state.form, state.form.negated()),
    )


def reduced_state(state: GaussianState, modes: Sequence[int]) -> GaussianState:
    """Restriction to a subset of modes (the form must not couple them to the rest)."""
    idx = np.array([2 * j + q for j in modes for q in (0, 1)], dtype=int)
    if idx.size == 0 or idx.min() < 0 or idx.max() >= state.form.dim:
        raise InvalidArgumentError(f"Invalid mode selection {list(modes)}")
    sub_form = state.form.matrix[np.ix_(idx, idx)]
    return GaussianState(
        mean=state.mean[idx],
        cov=CovarianceMatrix(state.alpha[np.ix_(idx, idx)]),
        form=SymplecticForm.from_matrix(sub_form, hbar=state.form.hbar),
    )


def state_direct_sum(a: GaussianState, b: GaussianState) -> GaussianState:
    """Product state of two Gaussian states."""
    return GaussianState(
        mean=np.concatenate([a.mean, b.mean]),
        cov=direct_sum(a.cov, b.cov),
        form=direct_sum(a.form, b.form),
    )


def thermal_state(n: float | Sequence[float], hbar: float = 1.0) -> GaussianState:
    """Product of thermal modes, alpha = hbar (N_j + 1/2) I per mode."""
    photons = np.atleast_1d(np.asarray(n, dtype=float))
    for value in photons:
        validate_nonnegative(float(value), "n")
    diag = np.repeat(hbar * (photons + 0.5), 2)
    form = canonical_form(photons.size, hbar)
    return GaussianState(mean=np.zeros(form.dim), cov=CovarianceMatrix(np.diag(diag)), form=form)


def vacuum_state(modes: int = 1, hbar: float = 1.0) -> GaussianState:
    return thermal_state([0.0] * modes, hbar)


def interleave_permutation(s: int) -> np.ndarray:
    """Index map from (x_1..x_s, y_1..y_s) to (x_1, y_1, ..., x_s, y_s)."""
    return np.array([j + q * s for j in range(s) for q in (0, 1)], dtype=int)


def gauge_to_real(gi: GaugeInvariantState, hbar: float = 1.0) -> GaussianState:
    """
    Real covariance hbar [[Re N + I/2, -Im N], [Im N, Re N + I/2]] on the canonical form.

    The block matrix is written in (x, y) block order and permuted to the
    interleaved ordering of ``canonical_form``.
    """
    hbar = validate_positive(hbar, "hbar")
    s = gi.modes
    re, im = gi.n.real, gi.n.imag
    block = hbar * np.block([[re + np.eye(s) / 2, -im], [im, re + np.eye(s) / 2]])
    perm = interleave_permutation(s)
    return GaussianState(
        mean=np.zeros(2 * s),
        cov=CovarianceMatrix(block[np.ix_(perm, perm)]),
        form=canonical_form(s, hbar),
    )


def gauge_entropy(gi: GaugeInvariantState, base: float | None = None) -> float:
    """Entropy of a gauge-invariant state, Sp g(N)."""
    eigenvalues = scipy.linalg.eigvalsh(gi.n)
    return sum(g_function(max(float(v), 0.0), base) for v in eigenvalues)


def char_fn(state: GaussianState, z: ArrayLike) -> complex:
    """Characteristic function exp(i m.z - z.alpha.z / 2)."""
    vec = np.asarray(z, dtype=float).reshape(-1)
    if vec.shape != state.mean.shape:
        raise InvalidArgumentError(f"z must have length {state.mean.size}, got {vec.size}")
    return complex(np.exp(1j * (state.mean @ vec) - 0.5 * (vec @ state.alpha @ vec)))


def thermal_trace_norm(gamma: float) -> float:
    """Trace norm of the Gaussian operator rho_gamma, max{1, 1/(2 gamma)}."""
    gamma = validate_positive(gamma, "gamma")
    return max(1.0, 1.0 / (2.0 * gamma))
