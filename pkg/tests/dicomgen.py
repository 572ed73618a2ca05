"""Stand-alone DICOM Part-10 encoder for tests and golden-corpus generation.

This is the independent encode path: it assembles files byte by byte from
declarative element descriptions (PS3.10 preamble/magic, PS3.5 element
encodings) and renders the expected dump text straight from those
descriptions. Nothing here imports the parser under test.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

IMPLICIT = "1.2.840.10008.1.2"
EXPLICIT = "1.2.840.10008.1.2.1"

STRING_VRS = {"AE", "AS", "CS", "DA", "DS", "DT", "IS", "LO", "LT", "PN", "SH", "ST", "TM", "UI"}
INT_FMTS = {"US": "<H", "UL": "<L", "SS": "<h", "SL": "<l"}
BYTES_VRS = {"OB", "OW", "UN"}
LONG_FORM = {"OB", "OW", "SQ", "UN"}
UNDEFINED = 0xFFFFFFFF


@dataclass
class El:
    """One element description. For SQ, ``items`` holds lists of nested El
    and ``undefined`` picks the length encoding (item lengths follow suit)."""

    group: int
    element: int
    vr: str
    value: Union[str, bytes, int, Sequence[int], None] = None
    items: Optional[list[list["El"]]] = None
    undefined: bool = False

    def tag_str(self) -> str:
        return f"{self.group:04X},{self.element:04X}"


def encode_value(vr: str, value) -> bytes:
    """Stored value bytes, padded to even length per PS3.5."""
    if vr in STRING_VRS:
        raw = value.encode("latin-1")
        if len(raw) % 2:
            raw += b"\x00" if vr == "UI" else b" "
        return raw
    if vr in INT_FMTS:
        values = value if isinstance(value, (list, tuple)) else [value]
        return b"".join(struct.pack(INT_FMTS[vr], v) for v in values)
    if vr in BYTES_VRS:
        raw = bytes(value)
        if len(raw) % 2:
            raw += b"\x00"
        return raw
    raise ValueError(f"cannot encode VR {vr}")


def _sq_contents(el: El, implicit: bool) -> bytes:
    out = bytearray()
    for item in el.items or []:
        body = b"".join(encode_element(child, implicit) for child in item)
        if el.undefined:
            out += struct.pack("<HHL", 0xFFFE, 0xE000, UNDEFINED)
            out += body
            out += struct.pack("<HHL", 0xFFFE, 0xE00D, 0)
        else:
            out += struct.pack("<HHL", 0xFFFE, 0xE000, len(body))
            out += body
    return bytes(out)


def encode_element(el: El, implicit: bool) -> bytes:
    if el.vr == "SQ":
        contents = _sq_contents(el, implicit)
        if implicit:
            header = struct.pack("<HHL", el.group, el.element, UNDEFINED if el.undefined else len(contents))
        elif el.undefined:
            header = struct.pack("<HH2sHL", el.group, el.element, b"SQ", 0, UNDEFINED)
        else:
            header = struct.pack("<HH2sHL", el.group, el.element, b"SQ", 0, len(contents))
        trailer = struct.pack("<HHL", 0xFFFE, 0xE0DD, 0) if el.undefined else b""
        return header + contents + trailer

    value = encode_value(el.vr, el.value)
    if implicit:
        return struct.pack("<HHL", el.group, el.element, len(value)) + value
    if el.vr in LONG_FORM:
        return struct.pack("<HH2sHL", el.group, el.element, el.vr.encode(), 0, len(value)) + value
    return struct.pack("<HH2sH", el.group, el.element, el.vr.encode(), len(value)) + value


def meta_group(transfer_syntax: str, sop_instance_uid: str = "1.2.826.0.1.3680043.9.9999.1") -> list[El]:
    return [
        El(0x0002, 0x0002, "UI", "1.2.840.10008.5.1.4.1.1.1"),  # computed radiography storage
        El(0x0002, 0x0003, "UI", sop_instance_uid),
        El(0x0002, 0x0010, "UI", transfer_syntax),
    ]


def build_file(
    transfer_syntax: str,
    dataset: list[El],
    sop_instance_uid: str = "1.2.826.0.1.3680043.9.9999.1",
    with_group_length: bool = True,
) -> bytes:
    """Preamble + magic + file meta (explicit VR LE) + dataset."""
    implicit = transfer_syntax == IMPLICIT
    meta = meta_group(transfer_syntax, sop_instance_uid)
    meta_bytes = b"".join(encode_element(el, implicit=False) for el in meta)
    if with_group_length:
        gl = El(0x0002, 0x0000, "UL", len(meta_bytes))
        meta_bytes = encode_element(gl, implicit=False) + meta_bytes
    body = b"".join(encode_element(el, implicit) for el in dataset)
    return b"\x00" * 128 + b"DICM" + meta_bytes + body


def dump_value(el: El) -> tuple[str, str]:
    """(length, value) columns of the expected dump line (non-SQ)."""
    stored = encode_value(el.vr, el.value)
    if el.vr in STRING_VRS:
        value = stored.decode("latin-1").rstrip(" \x00")
    elif el.vr in INT_FMTS:
        values = el.value if isinstance(el.value, (list, tuple)) else [el.value]
        value = "\\".join(str(v) for v in values)
    else:
        value = stored.hex()
    return str(len(stored)), value


def expected_dump(
    transfer_syntax: str,
    dataset: list[El],
    sop_instance_uid: str = "1.2.826.0.1.3680043.9.9999.1",
    with_group_length: bool = True,
) -> str:
    """Dump text derived from the description, never from parsed bytes."""
    implicit = transfer_syntax == IMPLICIT
    meta = meta_group(transfer_syntax, sop_instance_uid)
    if with_group_length:
        meta_len = len(b"".join(encode_element(el, implicit=False) for el in meta))
        meta = [El(0x0002, 0x0000, "UL", meta_len)] + meta

    lines = []
    for el in meta + dataset:
        if el.vr == "SQ":
            if el.undefined:
                lines.append(f"{el.tag_str()} SQ * (sequence skipped)")
            else:
                contents_len = len(_sq_contents(el, implicit=implicit))
                lines.append(f"{el.tag_str()} SQ {contents_len} (sequence skipped)")
            continue
        length, value = dump_value(el)
        lines.append(f"{el.tag_str()} {el.vr} {length} {value}".rstrip())
    return "\n".join(lines) + "\n"


def pixel_elements(
    rows: int,
    cols: int,
    pixel_bytes: bytes,
    bits_allocated: int = 8,
    bits_stored: Optional[int] = None,
    pixel_representation: int = 0,
    photometric: str = "MONOCHROME2",
    rescale: Optional[tuple[str, str]] = None,  # (slope, intercept) decimal strings
    window: Optional[tuple[str, str]] = None,  # (center, width) decimal strings
) -> list[El]:
    """The image pixel module elements in ascending tag order."""
    bits_stored = bits_stored or bits_allocated
    els = [
        El(0x0028, 0x0002, "US", 1),
        El(0x0028, 0x0004, "CS", photometric),
        El(0x0028, 0x0010, "US", rows),
        El(0x0028, 0x0011, "US", cols),
        El(0x0028, 0x0100, "US", bits_allocated),
        El(0x0028, 0x0101, "US", bits_stored),
        El(0x0028, 0x0102, "US", bits_stored - 1),
        El(0x0028, 0x0103, "US", pixel_representation),
    ]
    if window:
        els.append(El(0x0028, 0x1050, "DS", window[0]))
        els.append(El(0x0028, 0x1051, "DS", window[1]))
    if rescale:
        els.append(El(0x0028, 0x1052, "DS", rescale[1]))
        els.append(El(0x0028, 0x1053, "DS", rescale[0]))
    els.append(El(0x7FE0, 0x0010, "OW" if bits_allocated == 16 else "OB", pixel_bytes))
    return els


def identify_elements(sop_instance_uid: str = "1.2.826.0.1.3680043.9.9999.1") -> list[El]:
    return [
        El(0x0008, 0x0016, "UI", "1.2.840.10008.5.1.4.1.1.1"),
        El(0x0008, 0x0018, "UI", sop_instance_uid),
        El(0x0008, 0x0020, "DA", "20210101"),
        El(0x0008, 0x0060, "CS", "CR"),
        El(0x0010, 0x0010, "PN", "Doe^Jane"),
        El(0x0010, 0x0020, "LO", "P0001"),
    ]


def simple_pattern_dicom(
    pixels,
    sop_instance_uid: str,
    transfer_syntax: str = EXPLICIT,
    bits_allocated: int = 16,
    photometric: str = "MONOCHROME2",
    window: Optional[tuple[str, str]] = None,
) -> bytes:
    """Encode a [0,1] float matrix as stored samples (scaled to full range).

    MONOCHROME1 files store the inverted image so the display pipeline
    recovers the original.
    """
    import numpy as np

    arr = np.asarray(pixels, dtype=np.float64)
    if photometric == "MONOCHROME1":
        arr = 1.0 - arr
    max_stored = (1 << bits_allocated) - 1
    stored = np.rint(arr * max_stored)
    if bits_allocated == 16:
        raw = stored.astype("<u2").tobytes()
    else:
        raw = stored.astype("<u1").tobytes()
    dataset = identify_elements(sop_instance_uid) + pixel_elements(
        arr.shape[0],
        arr.shape[1],
        raw,
        bits_allocated=bits_allocated,
        photometric=photometric,
        window=window,
    )
    return build_file(transfer_syntax, dataset, sop_instance_uid=sop_instance_uid)
