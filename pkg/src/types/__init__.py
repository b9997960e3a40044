"""Type definitions for gausscap."""

from src.types.common import (
    AsymptoticGain,
    EnvEntropyResult,
    FigureId,
    GridPreset,
    LogBase,
    MatrixFunctionName,
    MaximalityProbe,
    OutputFormat,
    SweepParameter,
    TimingRecord,
    UncertaintyReport,
    ValidationCheck,
    ValidationSummary,
)

__all__ = [
    "AsymptoticGain",
    "EnvEntropyResult",
    "FigureId",
    "GridPreset",
    "LogBase",
    "MatrixFunctionName",
    "MaximalityProbe",
    "OutputFormat",
    "SweepParameter",
    "TimingRecord",
    "UncertaintyReport",
    "ValidationCheck",
    "ValidationSummary",
]
