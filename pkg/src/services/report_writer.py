"""Rendering of reports and tables as JSON, CSV or text."""

import csv
import io
import json
import math
from collections.abc import Iterable, Mapping, Sequence
from typing import Final, TextIO

from src.models.onemode import C1_LABEL, REPORT_COLUMNS, OneModeReport
from src.models.sweep import SCHEMA_VERSION, FigureTable
from src.types.common import OutputFormat, ValidationSummary
from src.utils.exceptions import InvalidArgumentError

SIGNIFICANT_DIGITS: Final[int] = 12

Cell = float | int | bool | str


def format_number(value: Cell) -> str:
    """12 significant digits; infinities as 'inf' / '-inf'; booleans as true/false."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


def json_value(value: Cell) -> Cell:
    """Finite floats rounded to 12 digits; non-finite values as strings."""
    if isinstance(value, (bool, str)):
        return value
    if not math.isfinite(value):
        return format_number(value)
    return float(format_number(value))


def write_csv_header(stream: TextIO, columns: Sequence[str]) -> None:
    csv.writer(stream, lineterminator="\n").writerow(columns)


def write_csv_row(stream: TextIO, row: Iterable[Cell]) -> None:
    csv.writer(stream, lineterminator="\n").writerow(format_number(v) for v in row)


def write_json_row(stream: TextIO, columns: Sequence[str], row: Sequence[Cell]) -> None:
    """One JSON object per line with the schema tag."""
    values = {c: json_value(v) for c, v in zip(columns, row, strict=True)}
    record = {"schema": SCHEMA_VERSION, **values}
    stream.write(json.dumps(record) + "\n")


def write_text_row(stream: TextIO, columns: Sequence[str], row: Sequence[Cell]) -> None:
    cells = (f"{c}={format_number(v)}" for c, v in zip(columns, row, strict=True))
    stream.write("  ".join(cells) + "\n")


def render_report(report: OneModeReport, fmt: OutputFormat) -> str:
    """
    Render every report field.

    Raises:
        InvalidArgumentError: On an unknown format
    """
    record = report.as_record()
    if fmt == "json":
        payload: dict[str, Cell] = {"schema": SCHEMA_VERSION, "log_base": report.log_base}
        payload.update({key: json_value(value) for key, value in record.items()})
        payload["c1_lower_label"] = C1_LABEL
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        write_csv_header(buffer, REPORT_COLUMNS)
        write_csv_row(buffer, record.values())
        return buffer.getvalue()
    if fmt == "text":
        width = max(len(key) for key in REPORT_COLUMNS)
        lines = [f"{key:<{width}}  {format_number(value)}" for key, value in record.items()]
        index = REPORT_COLUMNS.index("c1_lower")
        lines[index] += f"  ({C1_LABEL})"
        lines.append(f"{'log_base':<{width}}  {report.log_base}")
        return "\n".join(lines) + "\n"
    raise InvalidArgumentError(f"Unknown output format {fmt!r}")


def write_figure_csv(table: FigureTable, stream: TextIO) -> int:
    """Write header and rows; returns the number of data rows."""
    write_csv_header(stream, table.columns)
    for row in table.rows:
        write_csv_row(stream, row)
    return len(table.rows)


def read_csv_table(stream: TextIO) -> tuple[list[str], list[dict[str, str]]]:
    """Parse an emitted CSV back into its header and string rows."""
    reader = csv.DictReader(stream)
    rows = list(reader)
    return list(reader.fieldnames or []), rows


def parse_number(text: str) -> float | bool:
    """Inverse of format_number for numeric and boolean cells."""
    if text in ("true", "false"):
        return text == "true"
    return float(text)


def render_validation(
    summary: ValidationSummary, timings: Mapping[str, float] | None = None
) -> str:
    """One line per check with achieved error against tolerance, then a summary line."""
    lines = []
    for check in summary["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        line = (
            f"{status}  {check['name']}: error {format_number(check['error'])} "
            f"(tolerance {check['tolerance']:g})"
        )
        if "detail" in check:
            line += f"  [{check['detail']}]"
        lines.append(line)
    footer = (
        f"{len(summary['checks']) - summary['failures']}/{len(summary['checks'])} checks passed "
        f"({summary['preset']} preset, cutoff {summary['cutoff']}, {summary['seconds']:.1f} s"
    )
    if "rss_mb" in summary:
        footer += f", {summary['rss_mb']:.0f} MB resident"
    lines.append(footer + ")")
    for name, seconds in (timings or {}).items():
        lines.append(f"  timing {name}: {seconds:.3f} s")
    return "\n".join(lines) + "\n"


def render_validation_json(summary: ValidationSummary) -> str:
    checks = [
        {key: json_value(v) if isinstance(v, float) else v for key, v in check.items()}
        for check in summary["checks"]
    ]
    payload = {"schema": SCHEMA_VERSION, **summary, "checks": checks}
    return json.dumps(payload, indent=2) + "\n"
