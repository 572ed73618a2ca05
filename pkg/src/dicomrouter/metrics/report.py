"""Benchmark-style result tables, plain text and CSV."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .bootstrap import BootstrapCI

_COLUMNS = ("Model", "Recall (CI)", "Precision (CI)", "F1-score (CI)", "Inference Time", "#Parameters")


@dataclass(frozen=True)
class ReportRow:
    model: str
    recall: BootstrapCI
    precision: BootstrapCI
    f1: BootstrapCI
    inference_time_s: float
    parameters: int


def format_ci(ci: BootstrapCI) -> str:
    """Point estimate with its interval, e.g. ``0.982 (0.977–0.988)``."""
    return f"{ci.point:.3f} ({ci.lo:.3f}–{ci.hi:.3f})"


def _cells(row: ReportRow) -> tuple[str, ...]:
    return (
        row.model,
        format_ci(row.recall),
        format_ci(row.precision),
        format_ci(row.f1),
        f"{row.inference_time_s:.4f}",
        f"{row.parameters:,}",
    )


def emit_report(rows: list[ReportRow]) -> str:
    """Aligned plain-text table with one row per evaluated model."""
    if not rows:
        raise ValueError("need at least one result row")
    table = [_COLUMNS] + [_cells(r) for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(_COLUMNS))]
    out = []
    for line_no, line in enumerate(table):
        out.append("  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip())
        if line_no == 0:
            out.append("  ".join("-" * width for width in widths))
    return "\n".join(out) + "\n"


def emit_report_csv(rows: list[ReportRow]) -> str:
    if not rows:
        raise ValueError("need at least one result row")
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["model", "recall", "recall_lo", "recall_hi", "precision", "precision_lo", "precision_hi",
         "f1", "f1_lo", "f1_hi", "inference_time_s", "parameters"]
    )
    for r in rows:
        writer.writerow(
            [r.model, r.recall.point, r.recall.lo, r.recall.hi,
             r.precision.point, r.precision.lo, r.precision.hi,
             r.f1.point, r.f1.lo, r.f1.hi, r.inference_time_s, r.parameters]
        )
    return buf.getvalue()
