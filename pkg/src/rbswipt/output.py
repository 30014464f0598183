"""Curve-file and report emission.

Curve files are CSV with a '#'-prefixed metadata header embedding the
scenario id, the resolved-configuration digest, the full configuration, and
per-column units.  Floats are written with repr so the file parses back to
the exact values; missing values (unstable grid points) are empty cells
alongside a status column, never NaN.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .config import Config, config_digest, serialize_config
from .model import FIELD_UNITS, OperatingPoint


@dataclass
class Column:
    name: str
    unit: str
    values: list  # float | None | str


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_curve_file(path: Path, scenario: str, config: Config,
                     columns: list[Column]) -> None:
    n = len(columns[0].values)
    for col in columns:
        if len(col.values) != n:
            raise ValueError(f"column {col.name} has {len(col.values)} rows, "
                             f"expected {n}")
    lines = [f"# scenario: {scenario}",
             f"# config-digest: {config_digest(config)}",
             "# config-begin"]
    lines += [f"#   {line}" if line else "#"
              for line in serialize_config(config).splitlines()]
    lines.append("# config-end")
    lines.append("# columns: " + ", ".join(
        f"{c.name} [{c.unit}]" for c in columns))
    lines.append(",".join(c.name for c in columns))
    for i in range(n):
        lines.append(",".join(format_value(c.values[i]) for c in columns))
    path.write_text("\n".join(lines) + "\n")


def write_plot_description(path: Path, title: str, x_label: str,
                           y_label: str, csv_file: str,
                           series: list[dict]) -> None:
    """Declarative plot description (no rendering): axis labels plus the
    series-to-column mapping for an external plotting helper."""
    path.write_text(json.dumps({
        "title": title,
        "x_label": x_label,
        "y_label": y_label,
        "csv_file": csv_file,
        "series": series,
    }, indent=2) + "\n")


def operating_point_report(op: OperatingPoint) -> str:
    """Human-readable single-point report."""
    lines = [f"status: {op.status}"]
    if op.detail:
        lines.append(f"detail: {op.detail}")
    for name, unit in FIELD_UNITS.items():
        v = getattr(op, name)
        if v is None:
            continue
        suffix = f" {unit}" if unit else ""
        lines.append(f"{name}: {v:.6g}{suffix}")
    return "\n".join(lines) + "\n"
