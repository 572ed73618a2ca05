"""Minimal 8-bit grayscale PNG encoder (signature + IHDR + IDAT + IEND)."""
from __future__ import annotations

import struct
import zlib

import numpy as np

from .transforms import validate_image

PNG_SIGNATURE = bytes([137, 80, 78, 71, 13, 10, 26, 10])


def _chunk(chunk_type: bytes, payload: bytes) -> bytes:
    crc = zlib.crc32(chunk_type)
    crc = zlib.crc32(payload, crc)
    return struct.pack(">L", len(payload)) + chunk_type + payload + struct.pack(">L", crc)


def export_png(img: np.ndarray) -> bytes:
    """Encode a [0,1] grayscale matrix as an 8-bit PNG.

    Samples are round(v * 255) (round-half-to-even, numpy rint).
    """
    validate_image(img)
    h, w = img.shape
    samples = np.rint(img.astype(np.float64) * 255.0).astype(np.uint8)

    # bit depth 8, color type 0 (grayscale), default compression/filter/interlace
    ihdr = struct.pack(">2L5B", w, h, 8, 0, 0, 0, 0)

    raw = bytearray()
    for row in samples:
        raw.append(0)  # filter type None per scanline
        raw.extend(row.tobytes())

    return PNG_SIGNATURE + _chunk(b"IHDR", ihdr) + _chunk(b"IDAT", zlib.compress(bytes(raw))) + _chunk(b"IEND", b"")
