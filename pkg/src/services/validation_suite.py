"""Named checks of the closed forms against the Fock oracle and the covariance pipeline."""

import math
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Final

import numpy as np
import psutil

from src.models.config import get_config
from src.models.fock import OracleChannelSpec
from src.models.onemode import OneModeParams
from src.services import fock_oracle
from src.services.gaussian_channel import one_mode_channel, q_theta
from src.services.gaussian_state import g_function
from src.services.onemode import env_entropy_k1, pipeline_entropies, q_theta_closed, report
from src.types.common import GridPreset, ValidationCheck, ValidationSummary
from src.utils.exceptions import GaussCapError, InvalidArgumentError
from src.utils.logger import app_logger, log_performance
from src.utils.validation import validate_positive_int

OUTPUT_ENTROPY_TOLERANCE: Final[float] = 1e-4
EXCHANGE_ENTROPY_TOLERANCE: Final[float] = 1e-3
PIPELINE_TOLERANCE: Final[float] = 1e-8
TRACE_NORM_CUTOFF: Final[int] = 200
PROBE_SEEDS: Final[int] = 20

# (k, nc, N) points of the quick preset
_QUICK_OUTPUT_POINTS: Final = ((0.8, 0.0, 1.0), (0.5, 0.5, 0.2), (1.0, 0.5, 1.0), (0.8, 0.5, 1.0))
_QUICK_EXCHANGE_POINTS: Final = ((0.8, 0.0, 1.0), (1.0, 0.5, 1.0), (0.5, 0.5, 0.2))
_TRACE_NORM_GAMMAS: Final = (0.1, 0.25, 0.4, 0.5, 1.0, 3.0)
_PROBE_CONFIGS: Final = ((0.8, 0.0, 0.8), (0.6, 0.3, 0.8))


@dataclass(frozen=True)
class CheckSpec:
    """A named comparison; ``achieved`` is evaluated lazily so failures become results."""

    name: str
    expected: Callable[[], float]
    achieved: Callable[[], float]
    tolerance: float

    def run(self) -> ValidationCheck:
        try:
            expected = self.expected()
            achieved = self.achieved()
        except GaussCapError as e:
            app_logger.warning(f"check {self.name} failed: {e.message}")
            return {
                "name": self.name,
                "expected": math.nan,
                "achieved": math.nan,
                "error": math.inf,
                "tolerance": self.tolerance,
                "passed": False,
                "detail": f"{e.error_code}: {e.message}",
            }
        error = abs(achieved - expected)
        return {
            "name": self.name,
            "expected": expected,
            "achieved": achieved,
            "error": error,
            "tolerance": self.tolerance,
            "passed": bool(error <= self.tolerance),
        }


def _closed(k: float, nc: float, n: float, field: str) -> Callable[[], float]:
    return lambda: float(getattr(report(OneModeParams(k=k, nc=nc), n), field))


def _output_check(k: float, nc: float, n: float, cutoff: int) -> CheckSpec:
    spec = OracleChannelSpec(k=k, nc=nc)
    return CheckSpec(
        name=f"output_entropy k={k:g} nc={nc:g} n={n:g}",
        expected=_closed(k, nc, n, "h_out"),
        achieved=lambda: fock_oracle.output_entropy_fock(spec, n, cutoff),
        tolerance=OUTPUT_ENTROPY_TOLERANCE,
    )


def _exchange_check(k: float, nc: float, n: float, joint_cutoff: int) -> CheckSpec:
    spec = OracleChannelSpec(k=k, nc=nc)
    return CheckSpec(
        name=f"exchange_entropy k={k:g} nc={nc:g} n={n:g}",
        expected=_closed(k, nc, n, "h_exch"),
        achieved=lambda: fock_oracle.exchange_entropy_fock(spec, n, joint_cutoff),
        tolerance=EXCHANGE_ENTROPY_TOLERANCE,
    )


def _trace_norm_check(gamma: float) -> CheckSpec:
    return CheckSpec(
        name=f"trace_norm gamma={gamma:g}",
        expected=lambda: max(1.0, 1.0 / (2.0 * gamma)),
        achieved=lambda: fock_oracle.trace_norm_fock(gamma, TRACE_NORM_CUTOFF),
        tolerance=1e-5 if gamma != 0.25 else 1e-6,
    )


def _attenuation_paths(cutoff: int) -> float:
    rho = fock_oracle.thermal_fock(1.0, cutoff)
    kraus = fock_oracle.attenuate_fock(rho, 0.8, method="kraus")
    unitary = fock_oracle.attenuate_fock(rho, 0.8, method="unitary")
    return float(np.max(np.abs(kraus.matrix - unitary.matrix)))


def _probe_check(k: float, nc: float, n: float, seed: int, joint_cutoff: int) -> ValidationCheck:
    name = f"maximality k={k:g} nc={nc:g} n={n:g} seed={seed}"
    try:
        probe = fock_oracle.gaussian_maximality_probe(
            OracleChannelSpec(k=k, nc=nc), n, seed, cutoff=joint_cutoff
        )
    except GaussCapError as e:
        return {
            "name": name,
            "expected": math.nan,
            "achieved": math.nan,
            "error": math.inf,
            "tolerance": fock_oracle.MAXIMALITY_SLACK,
            "passed": False,
            "detail": f"{e.error_code}: {e.message}",
        }
    return {
        "name": name,
        "expected": probe["i_gaussian"],
        "achieved": probe["i_perturbed"],
        "error": max(0.0, probe["i_perturbed"] - probe["i_gaussian"]),
        "tolerance": fock_oracle.MAXIMALITY_SLACK,
        "passed": probe["holds"],
    }


def _pipeline_point(point: tuple[float, float, float]) -> float:
    k, nc, n = point
    closed = report(OneModeParams(k=k, nc=nc), n)
    general = pipeline_entropies(OneModeParams(k=k, nc=nc), n)
    return max(
        abs(closed.h_in - general["h_in"]),
        abs(closed.h_out - general["h_out"]),
        abs(closed.h_exch - general["h_exch"]),
    )


def _pipeline_grid_check(mapper: Callable[..., Iterable[float]]) -> ValidationCheck:
    points = [
        (float(k), float(nc), n)
        for k in np.linspace(0.05, 3.0, 20)
        for nc in np.linspace(0.0, 2.0, 20)
        for n in (0.1, 0.5, 1.0, 2.0, 5.0)
    ]
    errors = list(mapper(_pipeline_point, points))
    worst = int(np.argmax(errors))
    k, nc, n = points[worst]
    return {
        "name": f"pipeline_grid {len(points)} points",
        "expected": 0.0,
        "achieved": errors[worst],
        "error": errors[worst],
        "tolerance": PIPELINE_TOLERANCE,
        "passed": errors[worst] <= PIPELINE_TOLERANCE,
        "detail": f"worst at k={k:g} nc={nc:g} n={n:g}",
    }


def quick_checks(cutoff: int) -> list[CheckSpec]:
    """The twelve checks of the quick preset."""
    joint_cutoff = min(cutoff, get_config().joint_cutoff)
    checks = [
        CheckSpec(
            name="thermal_entropy n=1",
            expected=lambda: g_function(1.0),
            achieved=lambda: fock_oracle.vn_entropy(fock_oracle.thermal_fock(1.0, cutoff)),
            tolerance=1e-6,
        )
    ]
    checks += [_output_check(k, nc, n, cutoff) for k, nc, n in _QUICK_OUTPUT_POINTS]
    checks += [_exchange_check(k, nc, n, joint_cutoff) for k, nc, n in _QUICK_EXCHANGE_POINTS]
    checks += [
        CheckSpec(
            name="attenuation kraus_vs_unitary",
            expected=lambda: 0.0,
            achieved=lambda: _attenuation_paths(cutoff),
            tolerance=1e-10,
        ),
        _trace_norm_check(0.25),
        CheckSpec(
            name="environment_entropy k=1 nc=0.5 n=1",
            expected=_closed(1.0, 0.5, 1.0, "h_exch"),
            achieved=lambda: env_entropy_k1(1.0, 0.5)["entropy"],
            tolerance=1e-9,
        ),
        CheckSpec(
            name="q_theta pipeline k=0.8 nc=0.1",
            expected=lambda: q_theta_closed(OneModeParams(k=0.8, nc=0.1)),
            achieved=lambda: q_theta(one_mode_channel(0.8, 0.1)),
            tolerance=1e-12,
        ),
    ]
    return checks


def full_checks(cutoff: int) -> list[CheckSpec]:
    """Oracle grid and trace-norm law on top of the quick preset."""
    joint_cutoff = min(cutoff, get_config().joint_cutoff)
    grid = [(k, nc, n) for k in (0.5, 0.8) for nc in (0.0, 0.5) for n in (0.2, 1.0)]
    checks = quick_checks(cutoff)
    checks += [_output_check(k, nc, n, cutoff) for k, nc, n in grid]
    checks += [_exchange_check(k, nc, n, joint_cutoff) for k, nc, n in grid]
    checks += [_trace_norm_check(gamma) for gamma in _TRACE_NORM_GAMMAS]
    return checks


@log_performance
def run_validation(
    preset: GridPreset = "quick",
    cutoff: int | None = None,
    mapper: Callable[..., Iterable[ValidationCheck]] = map,
) -> ValidationSummary:
    """
    Run a preset and collect every check, failed or not.

    Library errors inside a check (e.g. a cutoff that is too small) turn into
    failed checks with the error in ``detail``; nothing is raised.

    Raises:
        InvalidArgumentError: On an unknown preset or invalid cutoff
    """
    cutoff = validate_positive_int(cutoff or get_config().cutoff, "cutoff")
    if preset not in ("quick", "full"):
        raise InvalidArgumentError(f"Unknown preset {preset!r}; expected quick or full")
    started = time.perf_counter()

    specs = quick_checks(cutoff) if preset == "quick" else full_checks(cutoff)
    results: list[ValidationCheck] = list(mapper(CheckSpec.run, specs))

    if preset == "full":
        joint_cutoff = min(cutoff, get_config().joint_cutoff)
        probes = [
            (k, nc, n, seed, joint_cutoff)
            for k, nc, n in _PROBE_CONFIGS
            for seed in range(PROBE_SEEDS)
        ]
        results += list(mapper(lambda args: _probe_check(*args), probes))
        results.append(_pipeline_grid_check(mapper))

    failures = sum(1 for check in results if not check["passed"])
    summary: ValidationSummary = {
        "preset": preset,
        "cutoff": cutoff,
        "checks": results,
        "failures": failures,
        "seconds": time.perf_counter() - started,
        "rss_mb": psutil.Process().memory_info().rss / 1e6,
    }
    app_logger.info(f"validation {preset}: {len(results) - failures}/{len(results)} checks passed")
    return summary
