"""Confusion matrix and one-vs-rest precision/recall/F1."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..nn.classes import NUM_CLASSES


class LengthMismatch(ValueError):
    pass


def confusion_matrix(predictions, labels, num_classes: int = NUM_CLASSES) -> np.ndarray:
    """Counts indexed [actual][predicted]."""
    predictions = np.asarray(predictions, dtype=np.intp)
    labels = np.asarray(labels, dtype=np.intp)
    if predictions.shape != labels.shape:
        raise LengthMismatch(f"{predictions.shape} predictions vs {labels.shape} labels")
    if predictions.size and not (
        0 <= predictions.min() and predictions.max() < num_classes and 0 <= labels.min() and labels.max() < num_classes
    ):
        raise ValueError(f"class codes must lie in [0, {num_classes})")
    cm = np.zeros((num_classes, num_classes), dtype=np.int64)
    np.add.at(cm, (labels, predictions), 1)
    return cm


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int
    degenerate: bool  # class absent from both labels and predictions


def precision_recall_f1(cm: np.ndarray, k: int) -> ClassMetrics:
    """One-vs-rest metrics for class k. Zero-denominator terms yield 0;
    a class with no true or predicted occurrences is flagged degenerate."""
    tp = int(cm[k, k])
    fp = int(cm[:, k].sum() - tp)
    fn = int(cm[k, :].sum() - tp)
    support = tp + fn

    precision = tp / (tp + fp) if (tp + fp) > 0 else 0.0
    recall = tp / (tp + fn) if (tp + fn) > 0 else 0.0
    f1 = 2.0 * precision * recall / (precision + recall) if (precision + recall) > 0 else 0.0
    return ClassMetrics(
        precision=precision,
        recall=recall,
        f1=f1,
        support=support,
        degenerate=(tp + fp + fn) == 0,
    )


def macro_metrics(cm: np.ndarray) -> dict[str, float]:
    """Unweighted mean of per-class metrics; degenerate classes excluded."""
    if cm.sum() == 0:
        raise ValueError("empty confusion matrix")
    per_class = [precision_recall_f1(cm, k) for k in range(cm.shape[0])]
    live = [m for m in per_class if not m.degenerate]
    return {
        "precision": float(np.mean([m.precision for m in live])),
        "recall": float(np.mean([m.recall for m in live])),
        "f1": float(np.mean([m.f1 for m in live])),
    }


def accuracy_from_cm(cm: np.ndarray) -> float:
    total = cm.sum()
    if total == 0:
        raise ValueError("empty confusion matrix")
    return float(np.trace(cm) / total)
