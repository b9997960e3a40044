"""Common type definitions for gausscap."""

import sys
from typing import (
    Literal,
    TypedDict,
)

if sys.version_info >= (3, 11):
    from typing import NotRequired
else:
    from typing_extensions import NotRequired

# Type aliases for constrained string values
LogBase = Literal["2", "e"]
MatrixFunctionName = Literal["abs", "sqrt"]
OutputFormat = Literal["json", "csv", "text"]
SweepParameter = Literal["k", "nc", "n"]
GridPreset = Literal["quick", "full"]
FigureId = Literal[1, 2, 3, 4, 5]


class UncertaintyReport(TypedDict):
    """Result of the uncertainty-relation check."""

    valid: bool
    min_gamma: float


class EnvEntropyResult(TypedDict):
    """Environment entropy of the k=1 channel from the explicit 4x4 matrix."""

    entropy: float
    lambda_abs: tuple[float, float]


class AsymptoticGain(TypedDict):
    """Small-N asymptotics of the one-shot and entanglement-assisted capacities."""

    c1_asym: float
    ce_asym: float
    c1_ratio: float
    ce_ratio: float
    gain_ratio: float


class MaximalityProbe(TypedDict):
    """Mutual information of a thermal input and a moment-matched perturbation."""

    i_gaussian: float
    i_perturbed: float
    holds: bool
    seed: NotRequired[int]


class ValidationCheck(TypedDict):
    """One closed-form versus oracle comparison."""

    name: str
    expected: float
    achieved: float
    error: float
    tolerance: float
    passed: bool
    detail: NotRequired[str]


class ValidationSummary(TypedDict):
    """Outcome of a validation run."""

    preset: GridPreset
    cutoff: int
    checks: list[ValidationCheck]
    failures: int
    seconds: float
    rss_mb: NotRequired[float]


class TimingRecord(TypedDict):
    """Duration of a decorated call."""

    name: str
    seconds: float
    ok: bool
