"""Prediction backends: anything that maps image batches to logits."""
from __future__ import annotations

import time
from typing import Protocol

import numpy as np

from ..pipeline.transforms import resize_bilinear
from .classes import BodyPartClass
from .functional import softmax
from .network import ModelParams, forward, validate_params


class BackendFailure(RuntimeError):
    pass


class Backend(Protocol):
    name: str

    def logits(self, batch: np.ndarray) -> np.ndarray:
        """(B,1,H,W) float32 batch to (B,5) logits."""
        ...

    def parameter_count(self) -> int: ...


class RouterNetBackend:
    """Runs the built-in network; optionally resamples inputs to the
    resolution the weights were trained at."""

    def __init__(self, params: ModelParams, input_size: int | None = None):
        validate_params(params)
        self.params = params
        self.input_size = input_size
        self.name = params.arch

    def logits(self, batch: np.ndarray) -> np.ndarray:
        if self.input_size is not None and batch.shape[-2:] != (self.input_size, self.input_size):
            batch = np.stack(
                [resize_bilinear(img[0], self.input_size, self.input_size) for img in batch]
            ).astype(np.float32)[:, None, :, :]
        return forward(self.params, batch)

    def parameter_count(self) -> int:
        return self.params.count()


def predict(backend: Backend, image: np.ndarray) -> tuple[BodyPartClass, np.ndarray, float]:
    """Classify one image; returns (class, probabilities, forward latency
    in seconds). Argmax ties resolve to the lowest class code."""
    batch = np.asarray(image, dtype=np.float32)[None, None, :, :]
    start = time.perf_counter()
    try:
        logits = backend.logits(batch)
    except Exception as exc:
        raise BackendFailure(f"backend {getattr(backend, 'name', '?')} failed: {exc}") from exc
    latency = time.perf_counter() - start
    probs = softmax(logits[0])
    return BodyPartClass(int(np.argmax(probs))), probs, latency
