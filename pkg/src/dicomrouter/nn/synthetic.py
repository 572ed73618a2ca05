"""Procedural five-pattern dataset for desk-scale experiments.

One visually distinct texture per routing class: horizontal bars, vertical
bars, a centered disk, a diagonal cross, and a flat low-contrast field.
Per-image jitter is a seeded brightness shift plus pixel noise, so images
within a class stay far closer to their class mean than class means are to
each other.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classes import NUM_CLASSES, BodyPartClass

_HI = 0.8
_LO = 0.2


@dataclass(frozen=True)
class LabeledExample:
    image: np.ndarray
    label: BodyPartClass


def class_pattern(label: BodyPartClass, image_size: int) -> np.ndarray:
    """Noise-free base pattern for one class, values in {0.2, 0.5, 0.8}.

    Stripe period and stroke width scale with the image size, so the same
    class renders consistent local texture at any resolution.
    """
    size = image_size
    period = max(4, size // 8)
    half = period // 2
    y = np.arange(size)[:, None]
    x = np.arange(size)[None, :]

    if label == BodyPartClass.ABDOMINAL:
        mask = np.broadcast_to((y % period) < half, (size, size))
    elif label == BodyPartClass.ADULT_CHEST:
        mask = np.broadcast_to((x % period) < half, (size, size))
    elif label == BodyPartClass.PEDIATRIC_CHEST:
        cy = cx = (size - 1) / 2.0
        mask = (y - cy) ** 2 + (x - cx) ** 2 < (0.3 * size) ** 2
    elif label == BodyPartClass.SPINE:
        stroke = max(2, size // 16)
        mask = (np.abs(y - x) < stroke) | (np.abs(y + x - (size - 1)) < stroke)
    else:  # OTHERS: flat mid-gray field
        return np.full((size, size), 0.5, dtype=np.float64)

    return np.where(mask, _HI, _LO).astype(np.float64)


def make_synthetic_dataset(n_per_class: int, image_size: int, seed: int) -> list[LabeledExample]:
    """n_per_class jittered examples of each of the five classes,
    class-major order, deterministic for a given seed."""
    if n_per_class < 1:
        raise ValueError("n_per_class must be >= 1")
    rng = np.random.default_rng(seed)
    examples: list[LabeledExample] = []
    for label in BodyPartClass:
        base = class_pattern(label, image_size)
        for _ in range(n_per_class):
            brightness = rng.uniform(-0.05, 0.05)
            noise = rng.normal(0.0, 0.02, size=base.shape)
            img = np.clip(base + brightness + noise, 0.0, 1.0).astype(np.float32)
            examples.append(LabeledExample(image=img, label=label))
    return examples


def dataset_arrays(examples: list[LabeledExample]) -> tuple[np.ndarray, np.ndarray]:
    """Stack examples into (N,1,H,W) float32 images and (N,) int labels."""
    if not examples:
        raise ValueError("empty example list")
    images = np.stack([ex.image for ex in examples]).astype(np.float32)[:, None, :, :]
    labels = np.array([int(ex.label) for ex in examples], dtype=np.intp)
    return images, labels
