"""Softmax and cross-entropy, the numerical core of the classifier."""
from __future__ import annotations

import numpy as np

from .classes import NUM_CLASSES


class NonFiniteInput(ValueError):
    pass


class LabelOutOfRange(ValueError):
    pass


_TINY = np.nextafter(0.0, 1.0)  # smallest positive double


def softmax(z: np.ndarray) -> np.ndarray:
    """Normalized exponential along the last axis.

    Computed with max subtraction so magnitudes up to +-1e4 stay stable.
    Entries that underflow to zero are floored at the smallest positive
    double, keeping every output strictly inside (0, 1); the distortion is
    far below the 1e-9 sum tolerance.
    """
    z = np.asarray(z, dtype=np.float64)
    if not np.isfinite(z).all():
        raise NonFiniteInput("softmax input contains non-finite values")
    shifted = z - z.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return np.maximum(e / e.sum(axis=-1, keepdims=True), _TINY)


def log_softmax(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    if not np.isfinite(z).all():
        raise NonFiniteInput("log_softmax input contains non-finite values")
    shifted = z - z.max(axis=-1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=-1, keepdims=True))


def _check_labels(labels: np.ndarray, num_classes: int) -> np.ndarray:
    labels = np.asarray(labels)
    if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
        raise LabelOutOfRange(f"labels must lie in [0, {num_classes}), got {labels.min()}..{labels.max()}")
    return labels.astype(np.intp)

def cross_entropy_loss(logits: np.ndarray, labels: np.ndarray, reduction: str = "mean") -> float:
    """Per-example loss -log softmax(z)[y], via log-sum-exp (never through
    the softmax output itself). ``sum`` adds over the batch; ``mean``
    divides the sum by the batch size."""
    logits = np.atleast_2d(np.asarray(logits, dtype=np.float64))
    labels = _check_labels(labels, logits.shape[-1])
    if reduction not in ("sum", "mean"):
        raise ValueError(f"unknown reduction {reduction!r}")
    log_probs = log_softmax(logits)
    picked = log_probs[np.arange(logits.shape[0]), labels]
    total = -picked.sum()
    return float(total if reduction == "sum" else total / logits.shape[0])


def cross_entropy_grad(logits: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Gradient of the mean-reduced loss with respect to the logits:
    (softmax(z) - onehot(y)) / B."""
    logits = np.atleast_2d(np.asarray(logits, dtype=np.float64))
    labels = _check_labels(labels, logits.shape[-1])
    batch = logits.shape[0]
    grad = softmax(logits)
    grad[np.arange(batch), labels] -= 1.0
    return grad / batch


def accuracy(predictions: np.ndarray, labels: np.ndarray) -> float:
    predictions = np.asarray(predictions)
    labels = np.asarray(labels)
    if predictions.shape != labels.shape:
        raise ValueError("predictions and labels must have equal length")
    if predictions.size == 0:
        raise ValueError("empty input")
    return float((predictions == labels).mean())
