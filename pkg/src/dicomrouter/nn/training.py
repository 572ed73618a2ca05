"""Mini-batch training loop: shuffled batches, Adam, warm-restart schedule,
best-validation-epoch weight selection."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .network import ModelParams, forward, init_params, loss_and_grads
from .optim import AdamState, LrSchedule, adam_step, lr_at
from .synthetic import LabeledExample, dataset_arrays


class EmptyDataset(ValueError):
    pass


@dataclass
class TrainConfig:
    epochs: int = 100
    batch_size: int = 32
    seed: int = 0
    reduction: str = "mean"  # "sum" scales gradients by the batch size
    schedule: LrSchedule = field(default_factory=LrSchedule)

    def __post_init__(self) -> None:
        if self.epochs < 1 or self.batch_size < 1:
            raise ValueError("epochs and batch_size must be >= 1")
        if self.reduction not in ("sum", "mean"):
            raise ValueError(f"unknown reduction {self.reduction!r}")


@dataclass
class EpochStats:
    epoch: int
    train_loss: float
    val_accuracy: float
    lr_last: float


def evaluate_accuracy(params: ModelParams, images: np.ndarray, labels: np.ndarray, batch_size: int = 64) -> float:
    correct = 0
    for start in range(0, len(images), batch_size):
        logits = forward(params, images[start : start + batch_size])
        correct += int((logits.argmax(axis=1) == labels[start : start + batch_size]).sum())
    return correct / len(images)


def train(
    train_set: Sequence[LabeledExample],
    val_set: Sequence[LabeledExample],
    config: TrainConfig,
) -> tuple[ModelParams, list[EpochStats]]:
    """Returns the parameters from the best-validation-accuracy epoch and
    the per-epoch history. Bitwise deterministic for fixed data and seed
    (single-threaded)."""
    if not train_set or not val_set:
        raise EmptyDataset("train and validation sets must be nonempty")

    x_train, y_train = dataset_arrays(list(train_set))
    x_val, y_val = dataset_arrays(list(val_set))

    params = init_params(config.seed)
    state = AdamState.fresh(params)
    rng = np.random.default_rng(config.seed)

    n = len(x_train)
    num_batches = (n + config.batch_size - 1) // config.batch_size

    best_params = params.copy()
    best_acc = -1.0
    history: list[EpochStats] = []

    for epoch in range(config.epochs):
        perm = rng.permutation(n)
        epoch_loss = 0.0
        lr = lr_at(config.schedule, float(epoch))
        for i in range(num_batches):
            batch_idx = perm[i * config.batch_size : (i + 1) * config.batch_size]
            xb = x_train[batch_idx]
            yb = y_train[batch_idx]
            loss_mean, grads = loss_and_grads(params, xb, yb)
            if config.reduction == "sum":
                scale = float(len(batch_idx))
                grads = {k: g * scale for k, g in grads.items()}
                epoch_loss += loss_mean * len(batch_idx)
            else:
                epoch_loss += loss_mean * len(batch_idx)
            lr = lr_at(config.schedule, epoch + i / num_batches)
            params, state = adam_step(params, grads, state, lr)

        train_loss = epoch_loss if config.reduction == "sum" else epoch_loss / n
        val_acc = evaluate_accuracy(params, x_val, y_val)
        history.append(EpochStats(epoch=epoch, train_loss=float(train_loss), val_accuracy=val_acc, lr_last=lr))
        # ties go to the later epoch: same accuracy, lower loss
        if val_acc >= best_acc:
            best_acc = val_acc
            best_params = params.copy()

    return best_params, history
