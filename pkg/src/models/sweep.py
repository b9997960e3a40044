"""Sweep and figure-table specifications for the CLI."""

from dataclasses import dataclass, field
from typing import Final

import numpy as np

from src.types.common import SweepParameter
from src.utils.exceptions import InvalidArgumentError

SCHEMA_VERSION: Final[int] = 1

_SWEEP_PARAMETERS: Final[frozenset[str]] = frozenset({"k", "nc", "n"})


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep over k, nc or n with the other two held fixed."""

    parameter: SweepParameter
    start: float
    stop: float
    steps: int
    k: float = 1.0
    nc: float = 0.0
    n: float = 1.0
    log_scale: bool = False

    def __post_init__(self) -> None:
        errors = []
        if self.parameter not in _SWEEP_PARAMETERS:
            errors.append(f"parameter must be one of k, nc, n; got {self.parameter!r}")
        if not self.start < self.stop:
            errors.append(f"from ({self.start}) must be below to ({self.stop})")
        if self.steps < 2:
            errors.append(f"steps must be at least 2, got {self.steps}")
        if self.log_scale and self.start <= 0:
            errors.append("a log sweep needs from > 0")
        if min(self.start, self.k, self.nc, self.n) < 0:
            errors.append("k, nc and n must be nonnegative")
        if errors:
            raise InvalidArgumentError("; ".join(errors))

    def values(self) -> list[float]:
        if self.log_scale:
            grid = np.geomspace(self.start, self.stop, self.steps)
        else:
            grid = np.linspace(self.start, self.stop, self.steps)
        return [float(v) for v in grid]

    def points(self) -> list[tuple[float, float, float]]:
        """(k, nc, n) per grid index, in order."""
        fixed = {"k": self.k, "nc": self.nc, "n": self.n}
        out = []
        for value in self.values():
            point = dict(fixed, **{self.parameter: value})
            out.append((point["k"], point["nc"], point["n"]))
        return out


@dataclass(frozen=True)
class FigureGrid:
    """Grids behind the five figure tables. Defaults are tool choices."""

    k_values: tuple[float, ...] = field(
        default_factory=lambda: tuple(float(v) for v in np.linspace(0.01, 3.0, 300))
    )
    nc_values: tuple[float, ...] = field(
        default_factory=lambda: tuple(float(v) for v in np.linspace(0.0, 2.0, 200))
    )
    n_list: tuple[float, ...] = (0.1, 1.0, 10.0)
    n_coherent: float = 0.7
    n_entropy: float = 1.0

    def __post_init__(self) -> None:
        if len(self.k_values) < 2 or len(self.nc_values) < 2:
            raise InvalidArgumentError("figure grids need at least two points")
        if not self.n_list:
            raise InvalidArgumentError("figure parameter list cannot be empty")
        if min(*self.k_values, *self.nc_values, *self.n_list) < 0:
            raise InvalidArgumentError("figure grids must be nonnegative")


@dataclass(frozen=True)
class FigureTable:
    """Column names plus rows in grid order."""

    figure_id: int
    columns: tuple[str, ...]
    rows: tuple[tuple[float | bool, ...], ...]
