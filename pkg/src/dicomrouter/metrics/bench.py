"""Per-image inference latency measurement."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..nn.backend import Backend, predict


@dataclass(frozen=True)
class BenchResult:
    mean_s: float
    times_s: tuple[float, ...]
    warmup: int


def latency_benchmark(backend: Backend, images, warmup: int = 5) -> BenchResult:
    """Mean single-image predict wall-clock time, after discarding warmup
    passes (which cycle through the images)."""
    images = list(images)
    if not images:
        raise ValueError("need at least one image")
    for i in range(warmup):
        predict(backend, images[i % len(images)])
    times = []
    for img in images:
        _, _, latency = predict(backend, img)
        times.append(latency)
    return BenchResult(mean_s=float(np.mean(times)), times_s=tuple(times), warmup=warmup)
