"""Subcommand handlers behind an exit-code error boundary."""

import sys
import uuid
from collections import defaultdict
from collections.abc import Callable
from functools import wraps
from pathlib import Path
from typing import Final, ParamSpec, TextIO

import numpy as np

from src.models.config import GaussCapConfig, get_config, load_env_file, set_config
from src.models.onemode import REPORT_COLUMNS, OneModeParams
from src.models.sweep import FigureGrid, SweepSpec
from src.services.onemode import figure_data, report
from src.services.report_writer import (
    render_report,
    render_validation,
    render_validation_json,
    write_csv_header,
    write_csv_row,
    write_figure_csv,
    write_json_row,
    write_text_row,
)
from src.services.validation_suite import run_validation
from src.services.worker_pool import get_worker_pool
from src.types.common import GridPreset, OutputFormat
from src.utils.exceptions import ConfigurationError, GaussCapError, InvalidArgumentError
from src.utils.logger import app_logger

P = ParamSpec("P")

EXIT_OK: Final[int] = 0
EXIT_FAILURE: Final[int] = 1
EXIT_USAGE: Final[int] = 2
EXIT_IO: Final[int] = 3

FIGURE_K_MIN: Final[float] = 0.01


def cli_handler(operation: str) -> Callable[[Callable[P, int]], Callable[P, int]]:
    """Error boundary that maps exceptions to the exit-code contract.

    - InvalidArgumentError / ConfigurationError -> 2
    - OSError -> 3
    - other library errors and unexpected exceptions -> 1, logged with the run id
    Messages go to stderr; nothing propagates past the boundary.
    """

    def decorator(func: Callable[P, int]) -> Callable[P, int]:
        @wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> int:
            run_id = uuid.uuid4().hex[:12]
            app_logger.debug(f"Starting {operation}", run_id=run_id)
            try:
                code = func(*args, **kwargs)
                app_logger.debug(f"Completed {operation} with exit code {code}", run_id=run_id)
                return code
            except (InvalidArgumentError, ConfigurationError) as e:
                app_logger.warning(f"{operation}: {e.message}", run_id=run_id)
                print(f"error: {e.message}", file=sys.stderr)
                return EXIT_USAGE
            except OSError as e:
                app_logger.error(f"{operation} I/O error: {e!s}", run_id=run_id)
                print(f"I/O error: {e!s}", file=sys.stderr)
                return EXIT_IO
            except GaussCapError as e:
                app_logger.error(f"{operation}: [{e.error_code}] {e.message}", run_id=run_id)
                print(f"error: {e.message}", file=sys.stderr)
                return EXIT_FAILURE
            except Exception as e:
                app_logger.error(f"{operation} unexpected error: {e!r}", run_id=run_id)
                print(f"{operation} failed unexpectedly (run {run_id})", file=sys.stderr)
                return EXIT_FAILURE

        return wrapper

    return decorator


@cli_handler("configure")
def configure(settings: dict[str, object]) -> int:
    """Install the merged configuration and set the log level.

    A .env file in or above the working directory fills environment
    variables that are not already set.
    """
    load_env_file()
    config = GaussCapConfig(**settings)
    set_config(config)
    app_logger.configure(config.log_level)
    return EXIT_OK


@cli_handler("onemode")
def cmd_onemode(
    k: float, nc: float, n: float, fmt: OutputFormat = "text", stream: TextIO | None = None
) -> int:
    """Print every closed-form quantity for one (k, nc, n)."""
    out = stream or sys.stdout
    out.write(render_report(report(OneModeParams(k=k, nc=nc), n), fmt))
    return EXIT_OK


def figure_grid_from_config(
    config: GaussCapConfig | None = None, n_list: tuple[float, ...] | None = None
) -> FigureGrid:
    cfg = config or get_config()
    return FigureGrid(
        k_values=tuple(
            float(v) for v in np.linspace(FIGURE_K_MIN, cfg.figure_k_max, cfg.figure_k_steps)
        ),
        nc_values=tuple(float(v) for v in np.linspace(0.0, cfg.figure_nc_max, cfg.figure_nc_steps)),
        n_list=n_list or cfg.figure_n_list,
    )


@cli_handler("figure")
def cmd_figure(
    figure_id: int,
    out: Path | None = None,
    grid: FigureGrid | None = None,
    stream: TextIO | None = None,
) -> int:
    """Write the CSV table behind a figure to ``out`` (stdout when omitted)."""
    table = figure_data(
        figure_id, grid or figure_grid_from_config(), mapper=get_worker_pool().imap_ordered
    )
    if out is None:
        rows = write_figure_csv(table, stream or sys.stdout)
    else:
        with out.open("w", encoding="utf-8", newline="") as handle:
            rows = write_figure_csv(table, handle)
        app_logger.info(f"figure {figure_id}: wrote {rows} rows to {out}")
    return EXIT_OK


def _sweep_row(point: tuple[float, float, float]) -> list[float | bool]:
    k, nc, n = point
    return list(report(OneModeParams(k=k, nc=nc), n).as_record().values())


@cli_handler("sweep")
def cmd_sweep(spec: SweepSpec, fmt: OutputFormat = "csv", stream: TextIO | None = None) -> int:
    """Stream one report row per grid point, in grid order."""
    out = stream or sys.stdout
    if fmt == "csv":
        write_csv_header(out, REPORT_COLUMNS)
    for row in get_worker_pool().imap_ordered(_sweep_row, spec.points()):
        if fmt == "csv":
            write_csv_row(out, row)
        elif fmt == "json":
            write_json_row(out, REPORT_COLUMNS, row)
        else:
            write_text_row(out, REPORT_COLUMNS, row)
        out.flush()
    return EXIT_OK


@cli_handler("validate")
def cmd_validate(
    preset: GridPreset = "quick",
    cutoff: int | None = None,
    fmt: OutputFormat = "text",
    stream: TextIO | None = None,
) -> int:
    """Run the oracle checks; exit 1 if any check fails."""
    out = stream or sys.stdout
    app_logger.clear_timings()
    summary = run_validation(preset, cutoff, mapper=get_worker_pool().imap_ordered)
    if fmt == "json":
        out.write(render_validation_json(summary))
    else:
        totals: dict[str, float] = defaultdict(float)
        for record in app_logger.timings():
            totals[record["name"]] += record["seconds"]
        out.write(render_validation(summary, dict(totals)))
    if summary["failures"]:
        print(f"{summary['failures']} validation check(s) failed", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK
