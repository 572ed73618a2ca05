"""Full DICOM bytes to model-ready tensor composition."""
from __future__ import annotations

import numpy as np

from ..dicom import DataSet, extract_pixel_data, parse_file, read_pixel_descriptor
from .transforms import (
    MODEL_INPUT_SIZE,
    WindowSpec,
    apply_modality_rescale,
    apply_photometric,
    apply_voi_window,
    resize_bilinear,
    validate_image,
)


def preprocess_dataset(dataset: DataSet, size: int = MODEL_INPUT_SIZE) -> np.ndarray:
    """parse -> extract -> rescale -> window -> photometric -> resize.

    Returns a float32 matrix of shape (size, size) with values in [0, 1].
    The VOI window is used when both center and width are present;
    otherwise the image is min-max normalized.
    """
    desc = read_pixel_descriptor(dataset)
    raw = extract_pixel_data(dataset, desc)
    rescaled = apply_modality_rescale(raw, desc.rescale_slope, desc.rescale_intercept)

    window = None
    if desc.window_center is not None and desc.window_width is not None:
        window = WindowSpec(center=desc.window_center, width=desc.window_width)
    normalized = apply_voi_window(rescaled, window)
    oriented = apply_photometric(normalized, desc.photometric)
    resized = resize_bilinear(oriented, size, size)
    return validate_image(np.clip(resized, 0.0, 1.0)).astype(np.float32)


def preprocess(data: bytes, size: int = MODEL_INPUT_SIZE) -> np.ndarray:
    """Preprocess raw Part-10 bytes; parser errors propagate."""
    parsed = parse_file(data)
    return preprocess_dataset(parsed.dataset, size=size)
