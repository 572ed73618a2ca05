"""Raw pixel matrix to normalized grayscale tensor transforms.

The model-ready representation is a float32 matrix with every value in
[0, 1]; helpers here validate that contract at the pipeline boundary.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

MODEL_INPUT_SIZE = 512


class InvalidWindow(ValueError):
    pass


@dataclass(frozen=True)
class WindowSpec:
    center: float
    width: float

    def __post_init__(self) -> None:
        if self.width < 1:
            raise InvalidWindow(f"window width {self.width} < 1")


def validate_image(img: np.ndarray) -> np.ndarray:
    """Assert the [0,1] finite 2-D contract; returns the array unchanged."""
    if img.ndim != 2 or img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError(f"image must be a nonempty 2-D matrix, got shape {img.shape}")
    if not np.isfinite(img).all():
        raise ValueError("image contains non-finite values")
    if img.min() < 0.0 or img.max() > 1.0:
        raise ValueError(f"image values outside [0,1]: min={img.min()}, max={img.max()}")
    return img


def apply_modality_rescale(raw: np.ndarray, slope: float, intercept: float) -> np.ndarray:
    """Linear map from stored samples to output units: raw * slope + intercept."""
    return raw.astype(np.float64) * slope + intercept


def apply_voi_window(values: np.ndarray, window: Optional[WindowSpec]) -> np.ndarray:
    """Map rescaled values into [0, 1].

    With a window, the DICOM linear VOI function with center c and width ww:
    everything at or below c - 0.5 - (ww-1)/2 clips to 0, everything above
    c - 0.5 + (ww-1)/2 clips to 1, and values in between map to
    ((v - (c - 0.5)) / (ww - 1)) + 0.5. Without a window the matrix is
    min-max normalized; a constant matrix becomes all zeros.
    """
    values = values.astype(np.float64)
    if window is None:
        lo = values.min()
        hi = values.max()
        if hi == lo:
            return np.zeros_like(values)
        return (values - lo) / (hi - lo)

    c = float(window.center)
    ww = float(window.width)
    if ww < 1:
        raise InvalidWindow(f"window width {ww} < 1")
    lower = c - 0.5 - (ww - 1) / 2.0
    upper = c - 0.5 + (ww - 1) / 2.0
    if ww == 1:
        # Degenerate window: pure threshold at the center.
        return (values > upper).astype(np.float64)
    mid = ((values - (c - 0.5)) / (ww - 1)) + 0.5
    out = np.where(values <= lower, 0.0, np.where(values > upper, 1.0, mid))
    return np.clip(out, 0.0, 1.0)


def apply_photometric(img: np.ndarray, photometric: str) -> np.ndarray:
    """MONOCHROME1 renders minimum as white, so invert; MONOCHROME2 passes."""
    if photometric == "MONOCHROME1":
        return 1.0 - img
    return img


def resize_bilinear(img: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Bilinear resample with half-pixel-center sampling.

    Source coordinate for output index d is (d + 0.5) * (in/out) - 0.5,
    clamped to the valid range, so every output is a convex combination of
    input samples.
    """
    if img.ndim != 2 or img.size == 0:
        raise ValueError("resize_bilinear needs a nonempty 2-D matrix")
    if out_h < 1 or out_w < 1:
        raise ValueError("output dimensions must be positive")

    img = img.astype(np.float64)
    in_h, in_w = img.shape

    ys = np.clip((np.arange(out_h) + 0.5) * (in_h / out_h) - 0.5, 0.0, in_h - 1.0)
    xs = np.clip((np.arange(out_w) + 0.5) * (in_w / out_w) - 0.5, 0.0, in_w - 1.0)

    y0 = np.floor(ys).astype(np.intp)
    x0 = np.floor(xs).astype(np.intp)
    y1 = np.minimum(y0 + 1, in_h - 1)
    x1 = np.minimum(x0 + 1, in_w - 1)
    wy = (ys - y0)[:, None]
    wx = (xs - x0)[None, :]

    top = img[np.ix_(y0, x0)] * (1.0 - wx) + img[np.ix_(y0, x1)] * wx
    bottom = img[np.ix_(y1, x0)] * (1.0 - wx) + img[np.ix_(y1, x1)] * wx
    return top * (1.0 - wy) + bottom * wy
