from __future__ import annotations

from typing import Any, Sequence

from formats.report import ResultReport
from utils.misc import format_number, format_seconds, format_vector


def render_table(header: Sequence[str], body: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in header]] + [
        [format_number(c) if isinstance(c, (int, float)) else str(c) for c in row] for row in body
    ]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _pairs(title: str, mapping: dict) -> list[str]:
    if not mapping:
        return []
    return [f"{title}:"] + [
        f"  {key}: {format_number(value) if isinstance(value, (int, float)) else value}"
        for key, value in mapping.items()
    ]


def render_report(report: ResultReport) -> str:
    """Plain-text view of a report for the terminal."""
    lines = [f"{report.command}  (tol {format_number(report.tol)})"]
    if report.section_dim is not None:
        lines.append(f"sections: d = {report.section_dim} of {report.total_dim}")
    lines += _pairs("stages", report.stages)
    for label, block in report.blocks.items():
        lines.append(f"F[{label}]:")
        lines += [f"  {format_vector(row)}" for row in block]
    if report.eigenvalues:
        body = [
            (i + 1, value, "tie" if i < len(report.ties) and report.ties[i] else "")
            for i, value in enumerate(report.eigenvalues)
        ]
        lines.append(render_table(("r", "eigenvalue", ""), body))
    for i, direction in enumerate(report.directions, 1):
        lines.append(f"pc {i}: {format_vector(direction)}")
    lines += _pairs("residuals", report.residuals)
    table = report.details.get("table")
    scalars = {k: v for k, v in report.details.items() if not isinstance(v, (dict, list))}
    lines += _pairs("details", scalars)
    if table:
        lines.append(render_table(table["header"], table["rows"]))
    lines += [f"- {note}" for note in report.provenance]
    if report.timing:
        lines.append("timing: " + ", ".join(f"{k} {format_seconds(v)}" for k, v in report.timing.items()))
    return "\n".join(lines)
