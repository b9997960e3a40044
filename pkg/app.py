"""gausscap command-line entry point."""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from src.handlers.cli_handlers import (
    EXIT_USAGE,
    cli_handler,
    cmd_figure,
    cmd_onemode,
    cmd_sweep,
    cmd_validate,
    configure,
    figure_grid_from_config,
)
from src.models.config import load_config_file
from src.models.sweep import SweepSpec


def _float_list(raw: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in raw.split(",") if part.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {raw!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gausscap",
        description="Capacities of bosonic Gaussian channels, checked against a Fock-space oracle.",
    )
    parser.add_argument("--threads", type=int, help="worker threads (default: available CPUs)")
    parser.add_argument("--config", type=Path, help="key=value settings file")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--log-base", choices=["2", "e"], help="logarithm base of every entropy")
    commands = parser.add_subparsers(dest="command", required=True)

    onemode = commands.add_parser("onemode", help="closed forms at one (k, nc, n)")
    onemode.add_argument("--k", type=float, required=True)
    onemode.add_argument("--nc", type=float, default=0.0)
    onemode.add_argument("--n", type=float, required=True)
    onemode.add_argument("--format", choices=["json", "csv", "text"], default="text")
    onemode.set_defaults(run=_run_onemode)

    figure = commands.add_parser("figure", help="CSV data behind figures 1-5")
    figure.add_argument("--id", type=int, required=True, choices=range(1, 6))
    figure.add_argument("--out", type=Path, help="output path (default: stdout)")
    figure.add_argument("--n-list", type=_float_list, help="input powers for figures 1-2")
    figure.set_defaults(run=_run_figure)

    sweep = commands.add_parser("sweep", help="one-parameter sweep of the report")
    sweep.add_argument("--param", choices=["k", "nc", "n"], required=True)
    sweep.add_argument("--from", dest="start", type=float, required=True)
    sweep.add_argument("--to", dest="stop", type=float, required=True)
    sweep.add_argument("--steps", type=int, required=True)
    sweep.add_argument("--k", type=float, default=1.0)
    sweep.add_argument("--nc", type=float, default=0.0)
    sweep.add_argument("--n", type=float, default=1.0)
    sweep.add_argument("--log", action="store_true", help="geometric grid")
    sweep.add_argument("--format", choices=["json", "csv", "text"], default="csv")
    sweep.set_defaults(run=_run_sweep)

    validate = commands.add_parser("validate", help="closed forms against the Fock oracle")
    validate.add_argument("--preset", choices=["quick", "full"], default="quick")
    validate.add_argument("--cutoff", type=int, help="Fock cutoff (default from config)")
    validate.add_argument("--format", choices=["json", "text"], default="text")
    validate.set_defaults(run=_run_validate)
    return parser


def _run_onemode(args: argparse.Namespace) -> int:
    return cmd_onemode(args.k, args.nc, args.n, args.format)


def _run_figure(args: argparse.Namespace) -> int:
    return _figure_with_grid(args.id, args.out, args.n_list)


@cli_handler("figure")
def _figure_with_grid(figure_id: int, out: Path | None, n_list: tuple[float, ...] | None) -> int:
    return cmd_figure(figure_id, out, figure_grid_from_config(n_list=n_list))


@cli_handler("sweep")
def _run_sweep(args: argparse.Namespace) -> int:
    spec = SweepSpec(
        parameter=args.param,
        start=args.start,
        stop=args.stop,
        steps=args.steps,
        k=args.k,
        nc=args.nc,
        n=args.n,
        log_scale=args.log,
    )
    return cmd_sweep(spec, args.format)


def _run_validate(args: argparse.Namespace) -> int:
    return cmd_validate(args.preset, args.cutoff, args.format)


@cli_handler("settings")
def _collect_settings(args: argparse.Namespace, settings: dict[str, object]) -> int:
    """Merge config file and flags into ``settings``; the environment fills the rest."""
    if args.config is not None:
        settings.update(load_config_file(args.config))
    flags = {"threads": args.threads, "log_level": args.log_level, "log_base": args.log_base}
    settings.update({key: value for key, value in flags.items() if value is not None})
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    settings: dict[str, object] = {}
    code = _collect_settings(args, settings)
    if code:
        return code
    code = configure(settings)
    if code:
        return code
    return int(args.run(args))


if __name__ == "__main__":
    sys.exit(main())
