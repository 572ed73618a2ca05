"""Image pixel module attributes and raw frame extraction."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import tags
from .elements import DataElement, DataSet, ValueDecodeError
from .parser import DicomError
from .tags import Tag

MONOCHROME1 = "MONOCHROME1"
MONOCHROME2 = "MONOCHROME2"


class MissingRequiredTag(DicomError):
    def __init__(self, tag: Tag):
        super().__init__(f"required tag {tag} is missing")
        self.tag = tag


class UnsupportedPixelFormat(DicomError):
    pass


class PixelDataMissing(DicomError):
    pass


class LengthMismatch(DicomError):
    pass


@dataclass(frozen=True)
class PixelDescriptor:
    rows: int
    cols: int
    bits_allocated: int
    bits_stored: int
    high_bit: int
    pixel_representation: int  # 0 unsigned, 1 two's complement
    photometric: str
    samples_per_pixel: int = 1
    rescale_slope: float = 1.0
    rescale_intercept: float = 0.0
    window_center: Optional[float] = None
    window_width: Optional[float] = None


def _required(dataset: DataSet, tag: Tag) -> DataElement:
    elem = dataset.get(tag)
    if elem is None:
        raise MissingRequiredTag(tag)
    return elem


def _first_decimal(dataset: DataSet, tag: Tag) -> Optional[float]:
    elem = dataset.get(tag)
    if elem is None:
        return None
    values = elem.decimals()
    return values[0] if values else None


def read_pixel_descriptor(dataset: DataSet) -> PixelDescriptor:
    """Collect the image pixel module attributes, applying DICOM defaults.

    RescaleSlope/Intercept default to 1/0; WindowCenter/Width stay None when
    absent and take the first value when multi-valued.
    """
    try:
        rows = _required(dataset, tags.ROWS).first_int()
        cols = _required(dataset, tags.COLUMNS).first_int()
        bits_allocated = _required(dataset, tags.BITS_ALLOCATED).first_int()
        bits_stored = _required(dataset, tags.BITS_STORED).first_int()
        pixel_representation = _required(dataset, tags.PIXEL_REPRESENTATION).first_int()
        photometric = _required(dataset, tags.PHOTOMETRIC_INTERPRETATION).text()

        samples_elem = dataset.get(tags.SAMPLES_PER_PIXEL)
        samples = samples_elem.first_int() if samples_elem is not None else 1

        slope = _first_decimal(dataset, tags.RESCALE_SLOPE)
        intercept = _first_decimal(dataset, tags.RESCALE_INTERCEPT)
        center = _first_decimal(dataset, tags.WINDOW_CENTER)
        width = _first_decimal(dataset, tags.WINDOW_WIDTH)

        high_bit_elem = dataset.get(tags.HIGH_BIT)
        high_bit = high_bit_elem.first_int() if high_bit_elem is not None else bits_stored - 1
    except ValueDecodeError as exc:
        raise UnsupportedPixelFormat(str(exc)) from exc

    if samples != 1:
        raise UnsupportedPixelFormat(f"samples per pixel {samples} != 1")
    if photometric not in (MONOCHROME1, MONOCHROME2):
        raise UnsupportedPixelFormat(f"photometric interpretation {photometric!r} not supported")
    if bits_allocated not in (8, 16):
        raise UnsupportedPixelFormat(f"bits allocated {bits_allocated} not in (8, 16)")
    if not 1 <= bits_stored <= bits_allocated:
        raise UnsupportedPixelFormat(f"bits stored {bits_stored} outside 1..{bits_allocated}")
    if high_bit != bits_stored - 1:
        raise UnsupportedPixelFormat(f"high bit {high_bit} != bits stored - 1")
    if pixel_representation not in (0, 1):
        raise UnsupportedPixelFormat(f"pixel representation {pixel_representation} not in (0, 1)")
    if rows < 1 or cols < 1:
        raise UnsupportedPixelFormat(f"non-positive image dimensions {rows}x{cols}")

    return PixelDescriptor(
        rows=rows,
        cols=cols,
        bits_allocated=bits_allocated,
        bits_stored=bits_stored,
        high_bit=high_bit,
        pixel_representation=pixel_representation,
        photometric=photometric,
        samples_per_pixel=samples,
        rescale_slope=1.0 if slope is None else slope,
        rescale_intercept=0.0 if intercept is None else intercept,
        window_center=center,
        window_width=width,
    )


def extract_pixel_data(dataset: DataSet, desc: PixelDescriptor) -> np.ndarray:
    """Decode the native (uncompressed) pixel data element into an int32
    matrix of shape (rows, cols).

    Samples are little endian; bits above bits_stored are masked off and
    two's-complement values are sign-extended.
    """
    elem = dataset.get(tags.PIXEL_DATA)
    if elem is None:
        raise PixelDataMissing("pixel data element (7FE0,0010) is absent")

    bytes_per_sample = desc.bits_allocated // 8
    expected = desc.rows * desc.cols * bytes_per_sample
    declared = len(elem.value)
    if declared != expected and declared != expected + 1:
        raise LengthMismatch(
            f"pixel data length {declared} != {desc.rows}x{desc.cols}x{bytes_per_sample} = {expected}"
        )

    dtype = np.dtype("<u1") if desc.bits_allocated == 8 else np.dtype("<u2")
    raw = np.frombuffer(elem.value[:expected], dtype=dtype).astype(np.int32)

    mask = (1 << desc.bits_stored) - 1
    raw &= mask
    if desc.pixel_representation == 1:
        sign_bit = 1 << (desc.bits_stored - 1)
        raw = np.where(raw >= sign_bit, raw - (1 << desc.bits_stored), raw)

    return raw.reshape(desc.rows, desc.cols)
