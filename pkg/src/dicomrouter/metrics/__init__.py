"""Evaluation harness: splits, confusion metrics, bootstrap CIs, reports."""

from .bench import BenchResult, latency_benchmark
from .bootstrap import (
    BootstrapCI,
    EmptyInput,
    bootstrap_ci,
    bootstrap_replicates,
    resample_indices,
)
from .confusion import (
    ClassMetrics,
    LengthMismatch,
    accuracy_from_cm,
    confusion_matrix,
    macro_metrics,
    precision_recall_f1,
)
from .predfile import HEADER, PredictionRows, read_predictions, write_predictions
from .report import ReportRow, emit_report, emit_report_csv, format_ci
from .split import ClassTooSmall, SplitSpec, stratified_split

__all__ = [
    "BenchResult",
    "BootstrapCI",
    "ClassMetrics",
    "ClassTooSmall",
    "EmptyInput",
    "HEADER",
    "LengthMismatch",
    "PredictionRows",
    "ReportRow",
    "SplitSpec",
    "accuracy_from_cm",
    "bootstrap_ci",
    "bootstrap_replicates",
    "confusion_matrix",
    "emit_report",
    "emit_report_csv",
    "format_ci",
    "latency_benchmark",
    "macro_metrics",
    "precision_recall_f1",
    "read_predictions",
    "resample_indices",
    "stratified_split",
    "write_predictions",
]
