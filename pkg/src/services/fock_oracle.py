"""
Brute-force Fock-space oracle.

Truncated number-basis density matrices, the attenuator dilation (Kraus
ladder and beamsplitter unitary), Gauss-Hermite classical noise, joint
states of (T x id) on purifications and their entropies. Everything here is
independent of the covariance-matrix code and is used to validate it.
"""

import math
from functools import lru_cache
from typing import Final, Literal

import numpy as np
import scipy.linalg
from numpy.polynomial.hermite import hermgauss
from numpy.typing import NDArray
from scipy.special import comb, eval_genlaguerre, gammaln, xlogy

from src.models.config import get_config
from src.models.fock import FockDensity, FockOperator, OracleChannelSpec
from src.types.common import MaximalityProbe
from src.utils.exceptions import (
    CutoffTooSmallError,
    InvalidArgumentError,
    PerturbationRejectedError,
)
from src.utils.logger import app_logger, log_performance
from src.utils.validation import validate_nonnegative, validate_positive, validate_positive_int

THERMAL_LEAK_LIMIT: Final[float] = 1e-8
CHANNEL_LEAK_LIMIT: Final[float] = 1e-6
TRACE_NORM_TAIL_LIMIT: Final[float] = 1e-6
ENTROPY_EIGENVALUE_FLOOR: Final[float] = 1e-14
QUADRATURE_WEIGHT_FLOOR: Final[float] = 1e-15
MAXIMALITY_SLACK: Final[float] = 1e-6
# Levels carrying the diagonal part of the maximality perturbation
PERTURBED_LEVELS: Final[int] = 12

AttenuationMethod = Literal["kraus", "unitary"]


def _log_base(base: float | None) -> float:
    return math.log(get_config().log_base_value if base is None else base)


# -- operators -----------------------------------------------------------------


def annihilation(cutoff: int) -> FockOperator:
    cutoff = validate_positive_int(cutoff, "cutoff")
    return FockOperator(cutoff, np.diag(np.sqrt(np.arange(1, cutoff)), 1))


def creation(cutoff: int) -> FockOperator:
    return FockOperator(cutoff, annihilation(cutoff).matrix.T.copy())


def number_operator(cutoff: int) -> FockOperator:
    cutoff = validate_positive_int(cutoff, "cutoff")
    return FockOperator(cutoff, np.diag(np.arange(cutoff, dtype=float)))


def _displacement_stack(alphas: NDArray[np.complex128], cutoff: int) -> NDArray[np.complex128]:
    """Matrix elements <m|D(alpha)|n> for a batch of alphas, shape (len, cutoff, cutoff).

    Closed Laguerre form: for m >= n,
    sqrt(n!/m!) alpha^(m-n) exp(-|alpha|^2/2) L_n^(m-n)(|alpha|^2); the upper
    triangle follows from D(alpha)^dagger = D(-alpha).
    """
    m, n = np.meshgrid(np.arange(cutoff), np.arange(cutoff), indexing="ij")
    low = np.minimum(m, n)
    gap = np.abs(m - n)
    radius = np.abs(alphas)[:, None, None]
    angle = np.angle(alphas)[:, None, None]
    x = radius**2
    log_magnitude = 0.5 * (gammaln(low + 1) - gammaln(low + gap + 1)) + xlogy(gap, radius) - x / 2
    phase = np.where(m >= n, np.exp(1j * gap * angle), (-1.0) ** gap * np.exp(-1j * gap * angle))
    return np.asarray(np.exp(log_magnitude) * phase * eval_genlaguerre(low, gap, x), dtype=complex)


def displacement(alpha: complex, cutoff: int) -> FockOperator:
    """Weyl displacement D(alpha) = exp(alpha a^dagger - conj(alpha) a) restricted to the cutoff."""
    cutoff = validate_positive_int(cutoff, "cutoff")
    return FockOperator(cutoff, _displacement_stack(np.array([complex(alpha)]), cutoff)[0])


# -- states and entropy ----------------------------------------------------------


def number_state(n: int, cutoff: int) -> FockDensity:
    cutoff = validate_positive_int(cutoff, "cutoff")
    if not 0 <= n < cutoff:
        raise InvalidArgumentError(f"number state |{n}> lies outside cutoff {cutoff}")
    matrix = np.zeros((cutoff, cutoff), dtype=complex)
    matrix[n, n] = 1.0
    return FockDensity(cutoff, matrix)


def _thermal_populations(n_mean: float, cutoff: int) -> NDArray[np.float64]:
    if n_mean == 0:
        populations = np.zeros(cutoff)
        populations[0] = 1.0
        return populations
    log_ratio = math.log(n_mean) - math.log1p(n_mean)
    leak = math.exp(cutoff * log_ratio)
    if leak >= THERMAL_LEAK_LIMIT:
        required = math.ceil(math.log(THERMAL_LEAK_LIMIT) / log_ratio)
        raise CutoffTooSmallError(
            f"thermal state N={n_mean} leaks {leak:.3g} beyond cutoff {cutoff}",
            required_cutoff=required,
            leak=leak,
        )
    return np.exp(np.arange(cutoff) * log_ratio - math.log1p(n_mean))


def thermal_fock(n_mean: float, cutoff: int | None = None) -> FockDensity:
    """
    Geometric distribution N^n / (N+1)^(n+1) on the number basis.

    Raises:
        CutoffTooSmallError: If the population beyond the cutoff reaches 1e-8
    """
    n_mean = validate_nonnegative(n_mean, "n_mean")
    cutoff = validate_positive_int(cutoff or get_config().cutoff, "cutoff")
    return FockDensity(cutoff, np.diag(_thermal_populations(n_mean, cutoff)).astype(complex))


def vn_entropy(rho: FockDensity, base: float | None = None) -> float:
    """-Tr rho log rho over eigenvalues above 1e-14."""
    eigenvalues = scipy.linalg.eigvalsh(rho.matrix)
    kept = eigenvalues[eigenvalues > ENTROPY_EIGENVALUE_FLOOR]
    return float(-np.sum(kept * np.log(kept))) / _log_base(base)


def purification_matrix(rho: FockDensity) -> NDArray[np.complex128]:
    """M with |psi> = sum_ij M[i, j] |i>|j> and rho = M M^dagger."""
    if rho.modes != 1:
        raise InvalidArgumentError("purification is built for one-mode densities")
    eigenvalues, vectors = scipy.linalg.eigh(rho.matrix)
    return np.asarray(vectors * np.sqrt(np.clip(eigenvalues, 0.0, None)), dtype=complex)


def two_mode_squeezed(n_mean: float, cutoff: int | None = None) -> FockDensity:
    """Purification sum_n sqrt(p_n) |n>|n> of the thermal state as a two-mode density."""
    thermal = thermal_fock(n_mean, cutoff)
    vector = np.diag(np.sqrt(thermal.matrix.diagonal().real)).reshape(-1)
    return FockDensity(thermal.cutoff, np.outer(vector, vector.conj()), modes=2)


def partial_trace(rho: FockDensity, keep: int) -> FockDensity:
    """Reduced density of mode ``keep`` (0 or 1) of a two-mode density."""
    if rho.modes != 2 or keep not in (0, 1):
        raise InvalidArgumentError("partial_trace expects a two-mode density and keep in {0, 1}")
    c = rho.cutoff
    tensor = rho.matrix.reshape(c, c, c, c)
    reduced = np.einsum("abcb->ac", tensor) if keep == 0 else np.einsum("abad->bd", tensor)
    return FockDensity(c, reduced)


# -- attenuation ------------------------------------------------------------------


@lru_cache(maxsize=32)
def _kraus_ladder(k: float, cutoff: int) -> NDArray[np.float64]:
    """A_l[n - l, n] = sqrt(C(n, l)) k^(n - l) (1 - k^2)^(l / 2), stacked over l."""
    ops = np.zeros((cutoff, cutoff, cutoff))
    for lost in range(cutoff):
        n = np.arange(lost, cutoff)
        ops[lost, n - lost, n] = (
            np.sqrt(comb(n, lost)) * k ** (n - lost) * (1.0 - k * k) ** (lost / 2)
        )
    ops.setflags(write=False)
    return ops


@lru_cache(maxsize=32)
def _beamsplitter_kraus(k: float, cutoff: int) -> NDArray[np.float64]:
    """Kraus operators <j|_E U |0>_E of U = exp(theta (a^dagger a_0 - a a_0^dagger)).

    U conserves the total photon number, so it is exponentiated block by
    block on the basis |n - j>|j>, j = 0..n.
    """
    theta = math.acos(k)
    ops = np.zeros((cutoff, cutoff, cutoff))
    for total in range(cutoff):
        j = np.arange(total + 1)
        generator = np.zeros((total + 1, total + 1))
        generator[j[1:] - 1, j[1:]] = np.sqrt(total - j[1:] + 1) * np.sqrt(j[1:])
        generator[j[:-1] + 1, j[:-1]] = -np.sqrt(total - j[:-1]) * np.sqrt(j[:-1] + 1)
        column = scipy.linalg.expm(theta * generator)[:, 0]
        ops[j, total - j, total] = column
    ops.setflags(write=False)
    return ops


def attenuation_kraus(
    k: float, cutoff: int, method: AttenuationMethod = "kraus"
) -> NDArray[np.float64]:
    """Stacked Kraus operators (l, cutoff, cutoff) of the pure-loss channel with amplitude k."""
    spec = OracleChannelSpec(k=k)
    cutoff = validate_positive_int(cutoff, "cutoff")
    if method == "kraus":
        return _kraus_ladder(spec.k, cutoff)
    if method == "unitary":
        return _beamsplitter_kraus(spec.k, cutoff)
    raise InvalidArgumentError(f"unknown attenuation method {method!r}")


def _check_channel_leak(out: FockDensity, before: FockDensity, what: str) -> FockDensity:
    lost = out.leak - before.leak
    if lost > CHANNEL_LEAK_LIMIT:
        raise CutoffTooSmallError(
            f"{what} pushes {lost:.3g} of the trace beyond cutoff {out.cutoff}",
            required_cutoff=2 * out.cutoff,
            leak=lost,
        )
    return out


def _one_mode(rho: FockDensity) -> None:
    if rho.modes != 1:
        raise InvalidArgumentError("channel maps act on one-mode Fock densities")


def attenuate_fock(rho: FockDensity, k: float, method: AttenuationMethod = "kraus") -> FockDensity:
    """
    Pure-loss channel a' = k a + sqrt(1 - k^2) a_0 on a one-mode density.

    ``method`` selects the Kraus ladder or the beamsplitter unitary on
    rho x |0><0| with the environment traced out; both give the same map.

    Raises:
        CutoffTooSmallError: If the output loses more than 1e-6 of the trace
    """
    _one_mode(rho)
    ops = attenuation_kraus(k, rho.cutoff, method)
    out = np.einsum("lij,jk,lmk->im", ops, rho.matrix, ops.conj(), optimize=True)
    return _check_channel_leak(FockDensity(rho.cutoff, out), rho, "attenuation")


@lru_cache(maxsize=16)
def _noise_nodes(nc: float, node_count: int) -> tuple[NDArray[np.complex128], NDArray[np.float64]]:
    """Product Gauss-Hermite nodes for the complex Gaussian measure with E|alpha|^2 = nc."""
    t, w = hermgauss(node_count)
    re, im = np.meshgrid(t, t, indexing="ij")
    weights = np.outer(w, w).reshape(-1) / math.pi
    alphas = math.sqrt(nc) * (re + 1j * im).reshape(-1)
    keep = weights >= QUADRATURE_WEIGHT_FLOOR
    return alphas[keep], weights[keep]


@lru_cache(maxsize=16)
def _noise_kraus(nc: float, node_count: int, cutoff: int) -> NDArray[np.complex128]:
    alphas, weights = _noise_nodes(nc, node_count)
    stack = _displacement_stack(alphas, cutoff) * np.sqrt(weights)[:, None, None]
    stack.setflags(write=False)
    return stack


def classical_noise_fock(rho: FockDensity, nc: float, node_count: int | None = None) -> FockDensity:
    """
    Random displacement integral of D(z) rho D(z)^dagger over the Gaussian measure of variance nc.

    Raises:
        CutoffTooSmallError: If the output loses more than 1e-6 of the trace
    """
    _one_mode(rho)
    nc = validate_nonnegative(nc, "nc")
    if nc == 0:
        return rho
    nodes = validate_positive_int(node_count or get_config().quadrature_nodes, "node_count")
    ops = _noise_kraus(nc, nodes, rho.cutoff)
    out = np.einsum("lij,jk,lmk->im", ops, rho.matrix, ops.conj(), optimize=True)
    return _check_channel_leak(FockDensity(rho.cutoff, out), rho, "classical noise")


def apply_channel_fock(
    spec: OracleChannelSpec, rho: FockDensity, node_count: int | None = None
) -> FockDensity:
    """Attenuation followed by classical noise."""
    out = rho if spec.k == 1.0 else attenuate_fock(rho, spec.k)
    return classical_noise_fock(out, spec.nc, node_count)


def output_entropy_fock(
    spec: OracleChannelSpec, n_mean: float, cutoff: int | None = None, base: float | None = None
) -> float:
    return vn_entropy(apply_channel_fock(spec, thermal_fock(n_mean, cutoff)), base)


# -- joint states -------------------------------------------------------------------


@lru_cache(maxsize=8)
def _superoperator(spec: OracleChannelSpec, cutoff: int, node_count: int) -> NDArray[np.complex128]:
    """S[a, b, x, y] with T[rho][a, b] = sum_xy S[a, b, x, y] rho[x, y]."""
    c2 = cutoff * cutoff
    total = np.eye(c2, dtype=complex)
    if spec.k != 1.0:
        ops = _kraus_ladder(spec.k, cutoff)
        total = np.einsum("lax,lby->abxy", ops, ops.conj(), optimize=True).reshape(c2, c2)
    if spec.nc != 0.0:
        ops = _noise_kraus(spec.nc, node_count, cutoff)
        noise = np.einsum("lax,lby->abxy", ops, ops.conj(), optimize=True).reshape(c2, c2)
        total = noise @ total
    result = total.reshape(cutoff, cutoff, cutoff, cutoff)
    result.setflags(write=False)
    return result


def joint_output_fock(
    spec: OracleChannelSpec, rho: FockDensity, node_count: int | None = None
) -> FockDensity:
    """
    (T x id) applied to the purification of rho.

    Raises:
        CutoffTooSmallError: If the channel loses more than 1e-6 of the trace
    """
    _one_mode(rho)
    c = rho.cutoff
    nodes = validate_positive_int(node_count or get_config().quadrature_nodes, "node_count")
    m = purification_matrix(rho)
    s4 = _superoperator(spec, c, nodes)
    joint = np.einsum("acxy,xb,yd->abcd", s4, m, m.conj(), optimize=True).reshape(c * c, c * c)
    out = FockDensity(c, (joint + joint.conj().T) / 2, modes=2)
    return _check_channel_leak(out, rho, "joint channel")


def exchange_entropy_of(
    spec: OracleChannelSpec,
    rho: FockDensity,
    node_count: int | None = None,
    base: float | None = None,
) -> float:
    return vn_entropy(joint_output_fock(spec, rho, node_count), base)


@log_performance
def exchange_entropy_fock(
    spec: OracleChannelSpec,
    n_mean: float,
    cutoff: int | None = None,
    base: float | None = None,
) -> float:
    """
    Entropy exchange of the channel on a thermal input.

    The thermal state is purified as a two-mode squeezed vector and the joint
    output is diagonalized at ``cutoff`` per mode (default: the configured
    joint cutoff, since the joint matrix has cutoff^2 rows).
    """
    joint_cutoff = cutoff or get_config().joint_cutoff
    return exchange_entropy_of(spec, thermal_fock(n_mean, joint_cutoff), base=base)


def mutual_info_fock(
    spec: OracleChannelSpec,
    rho: FockDensity,
    node_count: int | None = None,
    base: float | None = None,
) -> float:
    """H(rho) + H(T[rho]) - H(rho, T) on the truncated space."""
    out = apply_channel_fock(spec, rho, node_count)
    return (
        vn_entropy(rho, base)
        + vn_entropy(out, base)
        - exchange_entropy_of(spec, rho, node_count, base)
    )


def coherent_info_fock(
    spec: OracleChannelSpec,
    rho: FockDensity,
    node_count: int | None = None,
    base: float | None = None,
) -> float:
    out = apply_channel_fock(spec, rho, node_count)
    return vn_entropy(out, base) - exchange_entropy_of(spec, rho, node_count, base)


# -- trace norm -------------------------------------------------------------------------


def trace_norm_fock(gamma: float, cutoff: int = 200) -> float:
    """
    Trace norm of rho_gamma = (gamma + 1/2)^-1 sum_n r^n |n><n|, r = (gamma - 1/2) / (gamma + 1/2).

    For gamma < 1/2 the ratio is negative and the series alternates.

    Raises:
        CutoffTooSmallError: If the neglected tail exceeds 1e-6
    """
    gamma = validate_positive(gamma, "gamma")
    cutoff = validate_positive_int(cutoff, "cutoff")
    ratio = (gamma - 0.5) / (gamma + 0.5)
    diagonal = ratio ** np.arange(cutoff) / (gamma + 0.5)
    magnitude = abs(ratio)
    if magnitude > 0:
        tail = magnitude**cutoff / ((1.0 - magnitude) * (gamma + 0.5))
        if tail > TRACE_NORM_TAIL_LIMIT:
            required = math.ceil(
                math.log(TRACE_NORM_TAIL_LIMIT * (1.0 - magnitude) * (gamma + 0.5))
                / math.log(magnitude)
            )
            raise CutoffTooSmallError(
                f"trace-norm series for gamma={gamma} has tail {tail:.3g} at cutoff {cutoff}",
                required_cutoff=required,
                leak=tail,
            )
    return float(np.sum(np.abs(diagonal)))


# -- Gaussian maximality ------------------------------------------------------------------


def perturbed_thermal(
    n_mean: float, seed: int, amplitude: float | None = None, cutoff: int | None = None
) -> FockDensity:
    """
    Non-Gaussian density with the first and second moments of the thermal state.

    A diagonal perturbation orthogonal to 1 and n keeps the trace and <a^dagger a>;
    coherences |0><2| and |1><3| with c13 = -c02 / sqrt(3) keep <a^2> = 0,
    and <a> stays 0 because only even-distance coherences appear.

    Raises:
        PerturbationRejectedError: If the perturbed matrix is not positive semidefinite
    """
    c = validate_positive_int(cutoff or get_config().joint_cutoff, "cutoff")
    rng = np.random.default_rng(seed)
    if amplitude is None:
        scale = rng.uniform(0.2, 1.0)
    else:
        scale = validate_nonnegative(amplitude, "amplitude")
    populations = _thermal_populations(validate_nonnegative(n_mean, "n_mean"), c)
    levels = min(PERTURBED_LEVELS, c)

    raw = rng.standard_normal(levels)
    basis = np.column_stack([np.ones(levels), np.arange(levels, dtype=float)])
    coefficients, *_ = np.linalg.lstsq(basis, raw, rcond=None)
    delta = raw - basis @ coefficients
    negative = delta < 0
    if negative.any():
        delta *= np.min(0.5 * populations[:levels][negative] / -delta[negative])
    diagonal = populations.copy()
    diagonal[:levels] += scale * delta

    matrix = np.diag(diagonal).astype(complex)
    if c >= 4:
        c02 = scale * rng.uniform(-1.0, 1.0) * 0.9 * math.sqrt(diagonal[0] * diagonal[2])
        c13 = -c02 / math.sqrt(3.0)
        bound = 0.9 * math.sqrt(diagonal[1] * diagonal[3])
        if abs(c13) > bound:
            c13 = math.copysign(bound, c13)
            c02 = -math.sqrt(3.0) * c13
        matrix[0, 2] = matrix[2, 0] = c02
        matrix[1, 3] = matrix[3, 1] = c13

    smallest = float(np.linalg.eigvalsh(matrix)[0])
    if smallest < -1e-12:
        raise PerturbationRejectedError(
            f"perturbation with seed {seed} is not positive (min eigenvalue {smallest:.3g})",
            seed=seed,
        )
    return FockDensity(c, matrix)


@log_performance
def gaussian_maximality_probe(
    spec: OracleChannelSpec,
    n_mean: float,
    seed: int,
    amplitude: float | None = None,
    cutoff: int | None = None,
    base: float | None = None,
) -> MaximalityProbe:
    """
    Mutual information of the thermal input and of a moment-matched non-Gaussian input.

    The Gaussian state should win: ``holds`` is i_perturbed <= i_gaussian + 1e-6.
    """
    c = cutoff or get_config().joint_cutoff
    thermal = thermal_fock(n_mean, c)
    perturbed = perturbed_thermal(n_mean, seed, amplitude, c)
    i_gaussian = mutual_info_fock(spec, thermal, base=base)
    i_perturbed = mutual_info_fock(spec, perturbed, base=base)
    holds = i_perturbed <= i_gaussian + MAXIMALITY_SLACK
    if not holds:
        app_logger.warning(
            f"maximality probe seed={seed}: perturbed {i_perturbed:.9g} > gaussian {i_gaussian:.9g}"
        )
    return {"i_gaussian": i_gaussian, "i_perturbed": i_perturbed, "holds": holds, "seed": seed}
