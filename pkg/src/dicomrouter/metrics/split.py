"""Reproducible stratified train/validation/test splitting."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class ClassTooSmall(ValueError):
    pass


def _floor(x: float) -> int:
    # floor after rounding away float noise, so e.g. ratio 0.7 of 10 is 7
    return int(math.floor(round(x, 9)))


@dataclass(frozen=True)
class SplitSpec:
    ratios: tuple[float, float, float] = (0.7, 0.15, 0.15)
    seed: int = 0

    def __post_init__(self) -> None:
        if len(self.ratios) != 3 or any(r <= 0 for r in self.ratios):
            raise ValueError("need three positive ratios")
        if abs(sum(self.ratios) - 1.0) > 1e-9:
            raise ValueError(f"ratios {self.ratios} do not sum to 1")


def stratified_split(labels, spec: SplitSpec = SplitSpec()) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per class of size n: shuffle, then the first floor(r_train * n)
    indices go to train, the next floor(r_val * n) to validation, and the
    remainder to test. Counts depend only on class sizes; membership
    depends on the seed."""
    labels = np.asarray(labels)
    rng = np.random.default_rng(spec.seed)

    train_parts: list[np.ndarray] = []
    val_parts: list[np.ndarray] = []
    test_parts: list[np.ndarray] = []
    for cls in np.unique(labels):
        idx = np.flatnonzero(labels == cls)
        n = len(idx)
        if n < 3:
            raise ClassTooSmall(f"class {cls} has {n} examples, need >= 3")
        shuffled = rng.permutation(idx)
        n_train = _floor(spec.ratios[0] * n)
        n_val = _floor(spec.ratios[1] * n)
        train_parts.append(shuffled[:n_train])
        val_parts.append(shuffled[n_train : n_train + n_val])
        test_parts.append(shuffled[n_train + n_val :])

    return (
        np.concatenate(train_parts),
        np.concatenate(val_parts),
        np.concatenate(test_parts),
    )
