"""Closed forms for the one-mode attenuation/amplification channel with classical noise."""

import math
from collections.abc import Callable, Iterable
from functools import lru_cache, partial
from typing import Any, Final

import numpy as np
import scipy.linalg

from src.models.config import get_config
from src.models.onemode import OneModeParams, OneModeReport
from src.models.sweep import FigureGrid, FigureTable
from src.services.gaussian_state import entropy, entropy_from_gammas, g_function, thermal_state
from src.types.common import AsymptoticGain, EnvEntropyResult
from src.utils.exceptions import InvalidArgumentError, NumericFailureError
from src.utils.validation import validate_nonnegative, validate_positive

# Largest negative g-argument attributed to round-off
ARGUMENT_TOLERANCE: Final[float] = 1e-9
# Input powers used to extrapolate the k=1 coherent information to N -> infinity
_LIMIT_POWERS: Final[tuple[float, float]] = (1e8, 1e10)


def _resolve_base(base: float | None) -> float:
    return get_config().log_base_value if base is None else base


def _base_label(base: float) -> str:
    return "e" if math.isclose(base, math.e) else f"{base:g}"


def _exchange_arguments(k: float, nc: float, n: float) -> tuple[float, float, float, float]:
    """(N', D, x1, x2) with h_exch = g(x1) + g(x2).

    D - (N'_0 + 1) is formed as a ratio so that the small-N regime keeps
    its relative precision.
    """
    k2 = k * k
    n0 = max(0.0, k2 - 1.0) + nc
    n_prime = k2 * n + n0
    c = n0 + 1.0
    growth = (1.0 - k2) ** 2 * n * n + 2.0 * n * ((1.0 + k2) * c - 2.0 * k2)
    d = math.sqrt(c * c + growth)
    excess = growth / (d + c)
    x1 = (excess + 2.0 * n0 + (k2 - 1.0) * n) / 2.0
    x2 = (excess + (1.0 - k2) * n) / 2.0
    scale = max(1.0, n, n_prime)
    for x in (x1, x2):
        if x < -ARGUMENT_TOLERANCE * scale:
            raise NumericFailureError(
                f"negative exchange-entropy argument {x:.3g} at k={k}, nc={nc}, n={n}"
            )
    return n_prime, d, max(x1, 0.0), max(x2, 0.0)


def _coherent_info(k: float, nc: float, n: float, base: float) -> float:
    n_prime, _, x1, x2 = _exchange_arguments(k, nc, n)
    return g_function(n_prime, base) - g_function(x1, base) - g_function(x2, base)


@lru_cache(maxsize=4096)
def _q_g_cached(k: float, nc: float, base: float) -> float:
    if k == 1.0:
        if nc == 0.0:
            return math.inf
        # J(N) - Q_G decays like N^-1/2; one Richardson step over a factor 100
        low, high = (_coherent_info(1.0, nc, p, base) for p in _LIMIT_POWERS)
        return (10.0 * high - low) / 9.0
    if k == 0.0:
        return -math.inf
    k2 = k * k
    spread = abs(k2 - 1.0)
    return (math.log(k2) - math.log(spread)) / math.log(base) - g_function(nc / spread, base)


def q_g(params: OneModeParams, base: float | None = None) -> float:
    """
    Limit of the coherent information for N -> infinity.

    log k^2 - log|k^2 - 1| - g(N_c / |k^2 - 1|) for k != 1. At k = 1 the
    closed form is 0/0 and the limit is extrapolated from J at large N
    instead (+inf for N_c = 0).
    """
    return _q_g_cached(params.k, params.nc, _resolve_base(base))


def q_theta_closed(params: OneModeParams, base: float | None = None) -> float:
    """max{0, log(k^2 + 1) - log(|k^2 - 1| + 2 N_c)}; +inf for the noiseless identity."""
    k2 = params.k * params.k
    denominator = abs(k2 - 1.0) + 2.0 * params.nc
    if denominator == 0.0:
        return math.inf
    return max(0.0, (math.log(k2 + 1.0) - math.log(denominator)) / math.log(_resolve_base(base)))


def report(params: OneModeParams, n: float, base: float | None = None) -> OneModeReport:
    """
    Every closed-form quantity of the channel at input power n.

    The gain is reported as +inf with ``gain_infinite`` set when the one-shot
    lower bound vanishes (e.g. n = 0). At k = 0 the output ignores the input,
    so C_e and the lower bound are both zero for every n; the gain is then
    nan with ``gain_infinite`` clear.

    Raises:
        InvalidArgumentError: If n is negative
        NumericFailureError: If an exchange-entropy argument is clearly negative
    """
    n = validate_nonnegative(n, "n")
    log_base = _resolve_base(base)
    n_prime, d, x1, x2 = _exchange_arguments(params.k, params.nc, n)
    n0 = params.n0_prime

    h_in = g_function(n, log_base)
    h_out = g_function(n_prime, log_base)
    h_exch = g_function(x1, log_base) + g_function(x2, log_base)
    j = h_out - h_exch
    c_e = h_in + j
    c1_lower = h_out - g_function(n0, log_base)
    if params.k == 0.0:
        gain_infinite, gain = False, math.nan
    else:
        gain_infinite = c1_lower <= 0.0
        gain = math.inf if gain_infinite else c_e / c1_lower

    return OneModeReport(
        k=params.k,
        nc=params.nc,
        n=n,
        n_prime=n_prime,
        n0_prime=n0,
        d=d,
        lambda_abs=(x1 + 0.5, x2 + 0.5),
        h_in=h_in,
        h_out=h_out,
        h_exch=h_exch,
        c_e=c_e,
        c1_lower=c1_lower,
        gain=gain,
        gain_infinite=gain_infinite,
        j=j,
        q_g=q_g(params, log_base),
        q_theta=q_theta_closed(params, log_base),
        log_base=_base_label(log_base),
    )


def pipeline_entropies(
    params: OneModeParams, n: float, base: float | None = None
) -> dict[str, float]:
    """h_in, h_out and h_exch through the general covariance-matrix machinery."""
    from src.services.gaussian_channel import apply, entropy_exchange, one_mode_channel

    log_base = _resolve_base(base)
    channel = one_mode_channel(params.k, params.nc)
    state = thermal_state(validate_nonnegative(n, "n"))
    return {
        "h_in": entropy(state, log_base),
        "h_out": entropy(apply(channel, state), log_base),
        "h_exch": entropy_exchange(channel, state, log_base),
    }


# -- environment route at k = 1 ------------------------------------------------


def _environment_matrices(n: float, nc: float) -> tuple[np.ndarray, np.ndarray, float]:
    d2 = (nc + 1.0) ** 2 + 4.0 * nc * n
    alpha_e = 0.5 * np.array(
        [
            [nc, 0.0, 0.0, nc],
            [0.0, nc, -nc, 0.0],
            [0.0, -nc, d2 / nc, 0.0],
            [nc, 0.0, 0.0, d2 / nc],
        ]
    )
    delta_e = np.array(
        [
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ]
    )
    return alpha_e, delta_e, math.sqrt(d2)


def env_entropy_k1(n: float, nc: float, base: float | None = None) -> EnvEntropyResult:
    """
    Final environment entropy of the pure classical-noise channel (k = 1).

    The environment is L2 of the noise measure with the non-canonical form
    Delta_E = hbar [[0, -I], [I, 0]]; its output covariance is written out
    explicitly and the eigenvalue moduli of Delta_E^-1 alpha'_E are taken
    from a general eigensolver.

    Raises:
        InvalidArgumentError: If nc is not positive (trivial environment)
    """
    n = validate_nonnegative(n, "n")
    if nc <= 0:
        raise InvalidArgumentError("env_entropy_k1 needs nc > 0; the environment is trivial")
    alpha_e, delta_e, _ = _environment_matrices(n, nc)
    eigenvalues = scipy.linalg.eigvals(np.linalg.solve(delta_e, alpha_e))
    moduli = np.sort(np.abs(eigenvalues))[::-1][0::2]
    lambda_abs = (float(moduli[0]), float(moduli[1]))
    return {"entropy": entropy_from_gammas(lambda_abs, base), "lambda_abs": lambda_abs}


def env_covariance_k1(n: float, nc: float) -> tuple[np.ndarray, np.ndarray]:
    """(alpha'_E, Delta_E) of the k = 1 environment, hbar = 1."""
    if nc <= 0:
        raise InvalidArgumentError("environment covariance needs nc > 0")
    alpha_e, delta_e, _ = _environment_matrices(validate_nonnegative(n, "n"), nc)
    return alpha_e, delta_e


def env_reduced_matrix(n: float, nc: float) -> np.ndarray:
    """2x2 matrix [[i N_c, -D^2/N_c], [N_c, i N_c]] with eigenvalues i(N_c +- D)."""
    if nc <= 0:
        raise InvalidArgumentError("env_reduced_matrix needs nc > 0")
    _, _, d = _environment_matrices(validate_nonnegative(n, "n"), nc)
    return np.array([[1j * nc, -(d * d) / nc], [nc, 1j * nc]])


# -- small-N asymptotics --------------------------------------------------------


def asymptotic_gain(
    params: OneModeParams, n_small: float, base: float | None = None
) -> AsymptoticGain:
    """
    Leading small-N behaviour of the one-shot bound and C_e.

    C1 ~ N k^2 log((N'_0 + 1) / N'_0) and C_e ~ -N log N / (N'_0 + 1). The
    C_e ratio approaches 1 only logarithmically in N.

    Raises:
        InvalidArgumentError: If N'_0 = 0 or n_small is outside (0, 1e-3]
    """
    n_small = validate_positive(n_small, "n_small")
    if n_small > 1e-3:
        raise InvalidArgumentError(f"n_small must lie in (0, 1e-3], got {n_small}")
    n0 = params.n0_prime
    if n0 <= 0:
        raise InvalidArgumentError("asymptotics need N'_0 > 0")
    log_base = math.log(_resolve_base(base))
    exact = report(params, n_small, base)
    c1_asym = n_small * params.k**2 * math.log((n0 + 1.0) / n0) / log_base
    ce_asym = -n_small * math.log(n_small) / ((n0 + 1.0) * log_base)
    return {
        "c1_asym": c1_asym,
        "ce_asym": ce_asym,
        "c1_ratio": exact.c1_lower / c1_asym,
        "ce_ratio": exact.c_e / ce_asym,
        "gain_ratio": exact.gain / (ce_asym / c1_asym),
    }


# -- figure tables ----------------------------------------------------------------

Row = tuple[float | bool, ...]


def _label(prefix: str, value: float) -> str:
    return f"{prefix}_n{value:g}"


def _gain_vs_k(k: float, grid: FigureGrid, base: float) -> Row:
    params = OneModeParams(k=k, nc=0.0)
    return (k, *(report(params, n, base).gain for n in grid.n_list))


def _gain_vs_nc(nc: float, grid: FigureGrid, base: float) -> Row:
    params = OneModeParams(k=1.0, nc=nc)
    return (nc, *(report(params, n, base).gain for n in grid.n_list))


def _entropies_vs_k(k: float, grid: FigureGrid, base: float) -> Row:
    rep = report(OneModeParams(k=k, nc=0.0), grid.n_entropy, base)
    return (k, rep.h_out, rep.h_exch)


def _coherent_vs_k(k: float, grid: FigureGrid, base: float) -> Row:
    rep = report(OneModeParams(k=k, nc=0.0), grid.n_coherent, base)
    return (k, rep.j, rep.q_g, rep.q_theta)


def _quantum_capacity_map(point: tuple[float, float], grid: FigureGrid, base: float) -> Row:
    params = OneModeParams(k=point[0], nc=point[1])
    raw = q_g(params, base)
    return (point[0], point[1], raw, max(0.0, raw), q_theta_closed(params, base) > 0)


def figure_data(
    figure_id: int,
    grid: FigureGrid | None = None,
    mapper: Callable[[Callable[[Any], Row], Iterable[Any]], Iterable[Row]] = map,
    base: float | None = None,
) -> FigureTable:
    """
    Data behind figures 1-5.

    1: gain vs k at N_c = 0, one column per N in the parameter list.
    2: gain vs N_c at k = 1, same parameter list.
    3: output and exchange entropy vs k at N_c = 0.
    4: J (N = 0.7), Q_G and Q_Theta vs k at N_c = 0.
    5: Q_G over the (k, N_c) grid, raw and clamped at 0, with the Q_Theta > 0 mask.

    ``mapper`` is an order-preserving map, e.g. a worker pool's.

    Raises:
        InvalidArgumentError: On an unknown figure id
    """
    grid = grid or FigureGrid()
    log_base = _resolve_base(base)
    builder: Callable[[Any, FigureGrid, float], Row]
    points: list[Any]

    if figure_id == 1:
        columns: tuple[str, ...] = ("k", *(_label("gain", n) for n in grid.n_list))
        builder, points = _gain_vs_k, list(grid.k_values)
    elif figure_id == 2:
        columns = ("nc", *(_label("gain", n) for n in grid.n_list))
        builder, points = _gain_vs_nc, list(grid.nc_values)
    elif figure_id == 3:
        columns = ("k", "h_out", "h_exch")
        builder, points = _entropies_vs_k, list(grid.k_values)
    elif figure_id == 4:
        columns = ("k", _label("j", grid.n_coherent), "q_g", "q_theta")
        builder, points = _coherent_vs_k, list(grid.k_values)
    elif figure_id == 5:
        columns = ("k", "nc", "q_g_raw", "q_g_clamped", "q_theta_positive")
        builder = _quantum_capacity_map
        points = [(k, nc) for k in grid.k_values for nc in grid.nc_values]
    else:
        raise InvalidArgumentError(f"Unknown figure id {figure_id}; expected 1..5")

    row = partial(builder, grid=grid, base=log_base)
    return FigureTable(figure_id=figure_id, columns=columns, rows=tuple(mapper(row, points)))
