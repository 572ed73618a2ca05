"""Pixel pipeline: raw DICOM frames to normalized 512x512 tensors and PNGs."""

from .png import PNG_SIGNATURE, export_png
from .preprocess import preprocess, preprocess_dataset
from .transforms import (
    MODEL_INPUT_SIZE,
    InvalidWindow,
    WindowSpec,
    apply_modality_rescale,
    apply_photometric,
    apply_voi_window,
    resize_bilinear,
    validate_image,
)

__all__ = [
    "MODEL_INPUT_SIZE",
    "PNG_SIGNATURE",
    "InvalidWindow",
    "WindowSpec",
    "apply_modality_rescale",
    "apply_photometric",
    "apply_voi_window",
    "export_png",
    "preprocess",
    "preprocess_dataset",
    "resize_bilinear",
    "validate_image",
]
