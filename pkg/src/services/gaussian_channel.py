"""Gaussian channels on covariance matrices.

Channel action, dilations, noise decomposition, complete-positivity test,
entropy exchange, mutual and coherent information, the transpose bound
Q_Theta and the energy-constrained maximization of the mutual information.
"""

import itertools
import math
from collections.abc import Callable
from dataclasses import replace
from typing import Final

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import minimize, minimize_scalar

from src.models.channels import Dilation, GaussianChannel, NoiseDecomposition
from src.models.config import get_config
from src.models.phase_space import CovarianceMatrix, SymplecticForm
from src.models.states import GaussianState
from src.services.gaussian_state import (
    entropy,
    entropy_from_gammas,
    purification_block,
    thermal_state,
)
from src.services.symplectic import (
    PHYSICAL_TOLERANCE,
    canonical_form,
    direct_sum,
    symplectic_spectrum,
)
from src.utils.exceptions import (
    GaussCapError,
    InvalidArgumentError,
    InvalidDilationError,
    NumericFailureError,
    UnsupportedChannelError,
)
from src.utils.logger import app_logger, log_performance
from src.utils.validation import validate_nonnegative, validate_positive, validate_symmetric

FORM_TOLERANCE: Final[float] = 1e-10
MAX_ASCENT_ITERATIONS: Final[int] = 200
ASCENT_STOP: Final[float] = 1e-8
REFINE_RANDOM_STARTS: Final[int] = 2
REFINE_PENALTY: Final[float] = 1e3
# Relative energy overshoot tolerated in a refined input
ENERGY_SLACK: Final[float] = 1e-7

_REFLECTION = np.diag([1.0, -1.0])


# -- construction -------------------------------------------------------------


def from_dilation(
    k: ArrayLike,
    dilation: Dilation,
    form_in: SymplecticForm,
    form_out: SymplecticForm | None = None,
) -> GaussianChannel:
    """
    Channel induced by R' = K R + K_E R_E with the environment in its Gaussian state.

    Args:
        k: Linear map on the system variables
        dilation: Environment coupling and state
        form_in: Input commutation matrix
        form_out: Expected output commutation matrix; derived when omitted

    Returns:
        Channel with Y = K_E alpha_E K_E^T

    Raises:
        InvalidDilationError: If K Delta K^T + K_E Delta_E K_E^T is not the output form
    """
    k_arr = np.atleast_2d(np.asarray(k, dtype=float))
    if k_arr.shape[1] != form_in.dim or k_arr.shape[0] != dilation.k_env.shape[0]:
        raise InvalidDilationError(
            f"K {k_arr.shape} does not match the input form ({form_in.dim}) "
            f"or K_E {dilation.k_env.shape}"
        )
    k_env = dilation.k_env
    delta_out = k_arr @ form_in.matrix @ k_arr.T + k_env @ dilation.env_form @ k_env.T
    if form_out is None:
        try:
            form_out = SymplecticForm.from_matrix(delta_out, hbar=form_in.hbar)
        except InvalidArgumentError as e:
            raise InvalidDilationError(f"Dilation yields no valid output form: {e.message}") from e
    elif delta_out.shape != form_out.matrix.shape or not np.allclose(
        delta_out, form_out.matrix, rtol=0.0, atol=FORM_TOLERANCE * form_out.hbar
    ):
        raise InvalidDilationError("K Delta K^T + K_E Delta_E K_E^T differs from the output form")
    noise = k_env @ dilation.env_cov @ k_env.T
    return GaussianChannel(
        k=k_arr,
        form_in=form_in,
        form_out=form_out,
        noise=(noise + noise.T) / 2,
        dilation=dilation,
    )


def identity_channel(form: SymplecticForm) -> GaussianChannel:
    return GaussianChannel(
        k=np.eye(form.dim), form_in=form, form_out=form, noise=np.zeros((form.dim, form.dim))
    )


def beamsplitter_dilation(k: float, hbar: float = 1.0) -> Dilation:
    """a' = k a + sqrt(1 - k^2) a_0 with a vacuum environment mode, 0 <= k <= 1."""
    k = validate_nonnegative(k, "k")
    if k > 1:
        raise InvalidArgumentError(f"beamsplitter needs k <= 1, got {k}")
    return Dilation(
        k_env=math.sqrt(1 - k * k) * np.eye(2),
        env_cov=hbar / 2 * np.eye(2),
        env_form=canonical_form(1, hbar).matrix,
    )


def amplifier_dilation(k: float, hbar: float = 1.0) -> Dilation:
    """a' = k a + sqrt(k^2 - 1) a_0^dagger; the conjugation shows up as a reflection in K_E."""
    k = validate_nonnegative(k, "k")
    if k < 1:
        raise InvalidArgumentError(f"amplifier needs k >= 1, got {k}")
    return Dilation(
        k_env=math.sqrt(k * k - 1) * _REFLECTION,
        env_cov=hbar / 2 * np.eye(2),
        env_form=canonical_form(1, hbar).matrix,
    )


def classical_noise_dilation(nc: float, hbar: float = 1.0) -> Dilation:
    """Random displacement with variance N_c: a classical environment with Delta_E = 0."""
    nc = validate_nonnegative(nc, "nc")
    return Dilation(k_env=np.eye(2), env_cov=hbar * nc * np.eye(2), env_form=np.zeros((2, 2)))


def one_mode_channel(k: float, nc: float, hbar: float = 1.0) -> GaussianChannel:
    """
    Attenuator (k < 1) or amplifier (k > 1) followed by classical noise N_c.

    The environment is one vacuum mode plus a classical Gaussian variable, so
    Y = hbar (|k^2 - 1| / 2 + N_c) I.
    """
    k = validate_nonnegative(k, "k")
    nc = validate_nonnegative(nc, "nc")
    quantum = beamsplitter_dilation(k, hbar) if k <= 1 else amplifier_dilation(k, hbar)
    classical = classical_noise_dilation(nc, hbar)
    dilation = Dilation(
        k_env=np.hstack([quantum.k_env, classical.k_env]),
        env_cov=scipy.linalg.block_diag(quantum.env_cov, classical.env_cov),
        env_form=scipy.linalg.block_diag(quantum.env_form, classical.env_form),
    )
    form = canonical_form(1, hbar)
    return from_dilation(k * np.eye(2), dilation, form, form)


def compose(second: GaussianChannel, first: GaussianChannel) -> GaussianChannel:
    """
    Channel ``second`` after ``first``: K = K2 K1, Y = K2 Y1 K2^T + Y2.

    Raises:
        InvalidArgumentError: If the forms do not chain or either map is transposed
    """
    if first.transposed or second.transposed:
        raise InvalidArgumentError("compose expects channels, not transposed compositions")
    if not first.form_out.allclose(second.form_in):
        raise InvalidArgumentError(
            "output form of the first channel is not the input of the second"
        )
    noise = second.k @ first.noise @ second.k.T + second.noise
    return GaussianChannel(
        k=second.k @ first.k,
        form_in=first.form_in,
        form_out=second.form_out,
        noise=(noise + noise.T) / 2,
    )


def channel_direct_sum(a: GaussianChannel, b: GaussianChannel) -> GaussianChannel:
    """Tensor product of two channels acting on independent modes."""
    if a.transposed != b.transposed:
        raise InvalidArgumentError("cannot combine a channel with a transposed composition")
    return GaussianChannel(
        k=scipy.linalg.block_diag(a.k, b.k),
        form_in=direct_sum(a.form_in, b.form_in),
        form_out=direct_sum(a.form_out, b.form_out),
        noise=scipy.linalg.block_diag(a.noise, b.noise),
        transposed=a.transposed,
    )


def transpose_compose(ch: GaussianChannel) -> GaussianChannel:
    """Composition with transposition: same K and Y, input form enters Delta'' with flipped sign."""
    return replace(ch, transposed=not ch.transposed)


# -- action -------------------------------------------------------------------


def apply(ch: GaussianChannel, st: GaussianState) -> GaussianState:
    """
    Output state: m' = K m, alpha' = K alpha K^T + Y.

    Raises:
        InvalidArgumentError: On dimension mismatch, or when a non-CP map yields
            an unphysical output
    """
    if st.form.dim != ch.form_in.dim:
        raise InvalidArgumentError(
            f"Dimension mismatch: channel input {ch.form_in.dim} vs state {st.form.dim}"
        )
    alpha_out = ch.k @ st.alpha @ ch.k.T + ch.noise
    return GaussianState(
        mean=ch.k @ st.mean,
        cov=CovarianceMatrix((alpha_out + alpha_out.T) / 2),
        form=ch.form_out,
    )


def noise_char_fn(ch: GaussianChannel, z: ArrayLike) -> float:
    """Gaussian factor f(z) = exp(-z.Y.z / 2)."""
    vec = np.asarray(z, dtype=float).reshape(-1)
    if vec.shape != (ch.form_out.dim,):
        raise InvalidArgumentError(f"z must have length {ch.form_out.dim}, got {vec.size}")
    return float(np.exp(-0.5 * vec @ ch.noise @ vec))


def apply_char_fn(
    ch: GaussianChannel, phi: Callable[[NDArray[np.float64]], complex], z: ArrayLike
) -> complex:
    """Output characteristic function phi'(z') = phi(K^T z') f(z')."""
    vec = np.asarray(z, dtype=float).reshape(-1)
    return complex(phi(ch.k.T @ vec)) * noise_char_fn(ch, vec)


# -- noise decomposition and complete positivity --------------------------------


def delta_pp(ch: GaussianChannel, transpose_composed: bool = False) -> NDArray[np.float64]:
    """Delta'' = Delta' - K (+-Delta) K^T; the sign flips for a transposed input."""
    sign = -1.0 if (transpose_composed != ch.transposed) else 1.0
    result = ch.form_out.matrix - sign * (ch.k @ ch.form_in.matrix @ ch.k.T)
    return np.asarray((result - result.T) / 2, dtype=float)


def _is_zero(matrix: NDArray[np.float64], hbar: float) -> bool:
    return bool(np.max(np.abs(matrix), initial=0.0) <= FORM_TOLERANCE * hbar)


def _scaling_matrix(dpp: NDArray[np.float64], hbar: float) -> NDArray[np.float64]:
    """A with Delta'' = A^-T Delta A^-1, built from the real Schur form of Delta''."""
    t, q = scipy.linalg.schur(dpp, output="real")
    n = dpp.shape[0]
    d_inv = np.zeros((n, n))
    for j in range(0, n, 2):
        b = t[j, j + 1]
        if abs(b) <= FORM_TOLERANCE * hbar or abs(t[j + 1, j] + b) > 1e-8 * max(abs(b), hbar):
            raise UnsupportedChannelError("Delta'' is degenerate")
        block = np.eye(2) if b > 0 else _REFLECTION
        d_inv[j : j + 2, j : j + 2] = block / math.sqrt(abs(b) / hbar)
    return np.asarray(q @ d_inv, dtype=float)


def noise_decomposition(
    ch: GaussianChannel, transpose_composed: bool = False
) -> NoiseDecomposition:
    """
    Per-mode gammas of the noise operator rho with Tr(rho V(z)) = f(A z).

    Args:
        ch: Channel (or transposed composition)
        transpose_composed: Compose with one more transposition

    Returns:
        NoiseDecomposition with Delta'', A and the gammas of A^T Y A

    Raises:
        UnsupportedChannelError: If Delta'' is degenerate
    """
    hbar = ch.form_out.hbar
    dpp = delta_pp(ch, transpose_composed)
    singular = scipy.linalg.svdvals(dpp)
    if singular[-1] <= FORM_TOLERANCE * hbar:
        raise UnsupportedChannelError("Delta'' is degenerate; noise decomposition unavailable")
    a = _scaling_matrix(dpp, hbar)
    noise_cov = a.T @ ch.noise @ a
    spectrum = symplectic_spectrum(
        CovarianceMatrix((noise_cov + noise_cov.T) / 2), canonical_form(ch.modes_out, hbar)
    )
    return NoiseDecomposition(delta_pp=dpp, a=a, mode_gammas=spectrum.gammas)


def compute_validity(ch: GaussianChannel) -> bool:
    """
    Complete-positivity test behind ``GaussianChannel.valid``.

    A vanishing Delta'' means K is symplectic, and any Y >= 0 then gives a
    channel. Otherwise every gamma of the noise operator must be >= 1/2.

    Raises:
        UnsupportedChannelError: If Delta'' is degenerate but not zero
    """
    hbar = ch.form_out.hbar
    dpp = delta_pp(ch)
    if _is_zero(dpp, hbar):
        return bool(np.linalg.eigvalsh(ch.noise)[0] >= -FORM_TOLERANCE * hbar)
    decomposition = noise_decomposition(ch)
    return all(g >= 0.5 - PHYSICAL_TOLERANCE for g in decomposition.mode_gammas)


def is_valid_channel(ch: GaussianChannel) -> bool:
    """
    Cached complete-positivity verdict.

    Raises:
        UnsupportedChannelError: If Delta'' is degenerate (no verdict cached)
    """
    if ch.valid is None:
        raise UnsupportedChannelError("Delta'' is degenerate; complete positivity undecided")
    return ch.valid


# -- information quantities ----------------------------------------------------


def _require_channel(ch: GaussianChannel, st: GaussianState) -> None:
    if ch.transposed:
        raise InvalidArgumentError("information quantities need a channel, not a transposed map")
    if ch.valid is False:
        raise InvalidArgumentError("channel is not completely positive")
    if st.form.dim != ch.form_in.dim:
        raise InvalidArgumentError(
            f"Dimension mismatch: channel input {ch.form_in.dim} vs state {st.form.dim}"
        )


def entropy_exchange(ch: GaussianChannel, st: GaussianState, base: float | None = None) -> float:
    """
    Entropy of (T x id) applied to a purification of the input.

    Builds alpha'_12 = [[alpha', K beta], [beta^T K^T, alpha]] on the form
    Delta' + (-Delta) and sums g(gamma - 1/2) over its normal modes.
    """
    _require_channel(ch, st)
    beta = purification_block(st.cov, st.form)
    alpha_out = ch.k @ st.alpha @ ch.k.T + ch.noise
    cross = ch.k @ beta
    joint = np.block([[alpha_out, cross], [cross.T, st.alpha]])
    joint_form = direct_sum(ch.form_out, st.form.negated())
    gammas = symplectic_spectrum(CovarianceMatrix((joint + joint.T) / 2), joint_form).gammas
    return entropy_from_gammas(gammas, base)


def output_entropy(ch: GaussianChannel, st: GaussianState, base: float | None = None) -> float:
    _require_channel(ch, st)
    return entropy(apply(ch, st), base)


def mutual_info(ch: GaussianChannel, st: GaussianState, base: float | None = None) -> float:
    """Quantum mutual information H(rho) + H(T[rho]) - H(rho, T)."""
    return entropy(st, base) + output_entropy(ch, st, base) - entropy_exchange(ch, st, base)


def coherent_info(ch: GaussianChannel, st: GaussianState, base: float | None = None) -> float:
    """Coherent information H(T[rho]) - H(rho, T); may be negative."""
    return output_entropy(ch, st, base) - entropy_exchange(ch, st, base)


def q_theta(ch: GaussianChannel, base: float | None = None) -> float:
    """
    Upper bound log ||T Theta||_cb via the trace norm of the transposed noise operator.

    Returns the sum over modes of log max{1, 1/(2 gamma_l)}; +inf when some
    gamma_l vanishes, 0 when T Theta is itself completely positive. A
    vanishing Delta'' of the transposed composition means T Theta is a
    symplectic map with Gaussian noise, hence a channel, and the bound is 0.

    Raises:
        UnsupportedChannelError: If Delta'' is degenerate but not zero
    """
    hbar = ch.form_out.hbar
    if _is_zero(delta_pp(ch, transpose_composed=True), hbar):
        return 0.0
    decomposition = noise_decomposition(ch, transpose_composed=True)
    if decomposition.boundary:
        return math.inf
    log_base = math.log(get_config().log_base_value if base is None else base)
    return sum(max(0.0, -math.log(2.0 * g)) for g in decomposition.mode_gammas) / log_base


# -- energy-constrained maximization ------------------------------------------


def photon_number_form(modes: int, hbar: float = 1.0) -> NDArray[np.float64]:
    """Energy matrix eps with Sp(eps (alpha - alpha_vac)) = total mean photon number."""
    return np.eye(2 * modes) / (2.0 * hbar)


def _gauge_invariant_one_mode(
    ch: GaussianChannel, eps: NDArray[np.float64]
) -> tuple[float, float] | None:
    """(k, N_c) when ch is a one-mode channel kI with isotropic noise and eps is isotropic."""
    if ch.modes_in != 1 or ch.modes_out != 1:
        return None
    hbar = ch.form_in.hbar
    canonical = canonical_form(1, hbar)
    if not (ch.form_in.allclose(canonical) and ch.form_out.allclose(canonical)):
        return None
    k = float(ch.k[0, 0])
    y = float(ch.noise[0, 0])
    if (
        k < 0
        or not np.allclose(ch.k, k * np.eye(2), atol=1e-12)
        or not np.allclose(ch.noise, y * np.eye(2), atol=1e-12 * max(hbar, y))
        or not np.allclose(eps, eps[0, 0] * np.eye(2), atol=1e-14 * max(1.0, abs(eps[0, 0])))
    ):
        return None
    nc = y / hbar - abs(k * k - 1) / 2
    if nc < -1e-12:
        return None
    return k, max(nc, 0.0)


def _input_covariance(
    params: NDArray[np.float64], modes: int, hbar: float
) -> NDArray[np.float64]:
    """alpha = hbar S diag(nu) S^T with S = expm(J H) and nu_j = 1/2 + x_j^2.

    ``params`` holds the upper triangle of the symmetric H followed by x.
    """
    dim = 2 * modes
    h = np.zeros((dim, dim))
    h[np.triu_indices(dim)] = params[:-modes]
    h = h + np.triu(h, 1).T
    s = scipy.linalg.expm(canonical_form(modes).matrix @ h)
    nu = np.repeat(0.5 + params[-modes:] ** 2, 2)
    alpha = hbar * (s * nu) @ s.T
    return np.asarray((alpha + alpha.T) / 2, dtype=float)


def _refine_input(
    ch: GaussianChannel,
    eps: NDArray[np.float64],
    weights: NDArray[np.float64],
    budget: float,
    photons: NDArray[np.float64],
    best: float,
    base: float | None,
) -> tuple[GaussianState, float]:
    """SLSQP over every Gaussian input (squeezing, rotations, correlations) from a thermal start."""
    modes, hbar = ch.modes_in, ch.form_in.hbar
    form = canonical_form(modes, hbar)
    photons = np.maximum(photons, 0.0)
    vacuum = hbar / 2 * np.eye(form.dim)
    n_h = form.dim * (form.dim + 1) // 2
    # Largest photon number a single mode can hold, plus slack
    reach = math.sqrt(budget / float(np.min(weights))) + 1.0
    # Squeezing up to the budget and quadrature rotations up to a quarter turn
    limit = max(math.asinh(reach), math.pi / 2)

    def used(params: NDArray[np.float64]) -> float:
        return float(np.trace(eps @ (_input_covariance(params, modes, hbar) - vacuum)))

    def loss(params: NDArray[np.float64]) -> float:
        try:
            cov = CovarianceMatrix(_input_covariance(params, modes, hbar))
            return -mutual_info(ch, GaussianState(np.zeros(form.dim), cov, form), base)
        except (GaussCapError, np.linalg.LinAlgError):
            return REFINE_PENALTY - best

    rng = np.random.default_rng(0)
    warm = np.concatenate([np.zeros(n_h), np.sqrt(photons)])
    starts = [warm] + [
        np.concatenate([rng.normal(scale=0.1, size=n_h), warm[n_h:] * rng.uniform(0.3, 1.0)])
        for _ in range(REFINE_RANDOM_STARTS)
    ]
    bounds = [(-limit, limit)] * n_h + [(0.0, reach)] * modes
    best_alpha = thermal_state(photons, hbar).alpha
    for start in starts:
        result = minimize(
            loss,
            start,
            method="SLSQP",
            bounds=bounds,
            constraints=[{"type": "ineq", "fun": lambda p: budget - used(p)}],
            options={"maxiter": 500, "ftol": 1e-12},
        )
        if not result.success:
            app_logger.debug(f"input refinement stopped early: {result.message}")
        if used(result.x) > budget + ENERGY_SLACK * max(1.0, budget):
            continue
        candidate = -float(result.fun)
        if candidate > best:
            best, best_alpha = candidate, _input_covariance(result.x, modes, hbar)
    return GaussianState(np.zeros(form.dim), CovarianceMatrix(best_alpha), form), best


@log_performance
def maximize_mutual_info_gaussian(
    ch: GaussianChannel,
    energy_matrix: ArrayLike,
    budget: float,
    base: float | None = None,
) -> tuple[GaussianState, float]:
    """
    Best Gaussian input under Sp(eps (alpha - alpha_vac)) <= N_max, with its mutual information.

    Gauge-invariant one-mode channels use the closed form. Otherwise a
    pairwise coordinate ascent over products of thermal modes gives a warm
    start, and SLSQP then searches the full input covariance (Williamson
    parametrization) under the energy constraint from it and from a few
    seeded random starts. The best feasible point wins.

    Raises:
        InvalidArgumentError: On a non-PSD energy matrix or nonpositive budget
        NumericFailureError: If the ascent does not settle (carries the best iterate)
    """
    budget = validate_positive(budget, "budget")
    eps = validate_symmetric(energy_matrix, "energy matrix")
    if eps.shape != (ch.form_in.dim, ch.form_in.dim):
        raise InvalidArgumentError(f"energy matrix must be {ch.form_in.dim}x{ch.form_in.dim}")
    if np.linalg.eigvalsh(eps)[0] < -1e-12 * max(1.0, float(np.max(np.abs(eps)))):
        raise InvalidArgumentError("energy matrix must be positive semidefinite")
    _require_channel(ch, thermal_state([0.0] * ch.modes_in, ch.form_in.hbar))
    if not ch.form_in.allclose(canonical_form(ch.modes_in, ch.form_in.hbar)):
        raise InvalidArgumentError("input maximization needs the canonical input form")

    hbar = ch.form_in.hbar
    weights = np.array(
        [hbar * (eps[2 * j, 2 * j] + eps[2 * j + 1, 2 * j + 1]) for j in range(ch.modes_in)]
    )
    if np.any(weights <= 0):
        raise InvalidArgumentError("energy matrix leaves a mode unconstrained")

    closed = _gauge_invariant_one_mode(ch, eps)
    if closed is not None:
        from src.models.onemode import OneModeParams
        from src.services.onemode import report

        n = budget / float(weights[0])
        value = report(OneModeParams(k=closed[0], nc=closed[1]), n, base=base).c_e
        return thermal_state(n, hbar), value

    def objective(photons: NDArray[np.float64]) -> float:
        return mutual_info(ch, thermal_state(np.maximum(photons, 0.0), hbar), base)

    photons = budget / (ch.modes_in * weights)
    best = objective(photons)
    for iteration in range(MAX_ASCENT_ITERATIONS):
        improvement = 0.0
        for i, j in itertools.combinations(range(ch.modes_in), 2):
            # Move energy t from mode j to mode i keeping sum(w n) fixed
            low, high = -weights[i] * photons[i], weights[j] * photons[j]
            if high - low <= 0:
                continue

            def shifted(t: float, i: int = i, j: int = j) -> NDArray[np.float64]:
                trial = photons.copy()
                trial[i] += t / weights[i]
                trial[j] -= t / weights[j]
                return trial

            result = minimize_scalar(
                lambda t: -objective(shifted(t)), bounds=(low, high), method="bounded"
            )
            candidate = -float(result.fun)
            if candidate > best:
                improvement += candidate - best
                photons, best = shifted(float(result.x)), candidate
        app_logger.debug(f"ascent iteration {iteration}: I={best:.12g}")
        if improvement < ASCENT_STOP:
            return _refine_input(ch, eps, weights, budget, photons, best, base)
    raise NumericFailureError(
        f"Mutual-information ascent did not settle in {MAX_ASCENT_ITERATIONS} iterations",
        best=(thermal_state(photons, hbar), best),
    )
