"""DICOM Part-10 file parsing for native little-endian transfer syntaxes.

Summary of the wire format handled here:

* 128-byte preamble, then the 4-byte magic "DICM".
* File meta group (0002,xxxx), always explicit VR little endian.
* Main data set in the transfer syntax named by (0002,0010); only
  Implicit VR Little Endian and Explicit VR Little Endian are accepted.
* Explicit VR elements: tag(4) + VR(2) + u16 length, except OB/OW/SQ/UN
  which use tag(4) + VR(2) + 2 reserved bytes + u32 length.
* Implicit VR elements: tag(4) + u32 length; the VR comes from the data
  dictionary (UN when unknown).
* Sequences (SQ) are skipped structurally, never decoded: defined-length
  sequences by their byte count, undefined-length ones by walking items
  until the sequence delimiter (FFFE,E0DD).

Parsing is total: any input either yields a ParsedFile or raises a
DicomError subclass. No other exception type escapes parse_file.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

from .elements import (
    BYTES_VRS,
    LONG_FORM_VRS,
    SUPPORTED_VRS,
    UNDEFINED_LENGTH,
    DataElement,
    DataSet,
)
from .tags import (
    EXPLICIT_VR_LITTLE_ENDIAN,
    IMPLICIT_VR_LITTLE_ENDIAN,
    ITEM,
    ITEM_DELIMITER,
    SEQUENCE_DELIMITER,
    TRANSFER_SYNTAX_UID,
    VR_DICTIONARY,
    Tag,
)

PREAMBLE_SIZE = 128
MAGIC = b"DICM"

_HEADER = struct.Struct("<HH")
_U16 = struct.Struct("<H")
_U32 = struct.Struct("<L")


class DicomError(Exception):
    """Base class for every typed failure in this package's DICOM layer."""


class DicomParseError(DicomError):
    """Base class for structural parse failures."""


class MissingMagic(DicomParseError):
    """Input is not a DICOM Part-10 file (no DICM magic after the preamble)."""


class UnsupportedTransferSyntax(DicomParseError):
    """Transfer syntax is absent or not one of the two supported UIDs."""


class TruncatedElement(DicomParseError):
    """A declared length or header runs past the end of the input."""


class MalformedElement(DicomParseError):
    """Structurally invalid element: unknown VR, odd length, tag disorder."""


@dataclass(frozen=True)
class ParsedFile:
    file_meta: DataSet
    dataset: DataSet


def parse_file(data: bytes) -> ParsedFile:
    """Parse a Part-10 byte stream into file meta and main data sets."""
    if len(data) < PREAMBLE_SIZE + 4 or data[PREAMBLE_SIZE : PREAMBLE_SIZE + 4] != MAGIC:
        raise MissingMagic("not a DICOM Part-10 file: missing DICM magic at offset 128")

    pos = PREAMBLE_SIZE + 4
    file_meta = DataSet(transfer_syntax=EXPLICIT_VR_LITTLE_ENDIAN)
    pos = _parse_group_0002(data, pos, file_meta)

    ts_elem = file_meta.get(TRANSFER_SYNTAX_UID)
    if ts_elem is None:
        raise UnsupportedTransferSyntax("file meta declares no transfer syntax (0002,0010)")
    transfer_syntax = ts_elem.value.decode("latin-1").rstrip(" \x00")
    if transfer_syntax not in (IMPLICIT_VR_LITTLE_ENDIAN, EXPLICIT_VR_LITTLE_ENDIAN):
        raise UnsupportedTransferSyntax(f"unsupported transfer syntax {transfer_syntax!r}")

    implicit = transfer_syntax == IMPLICIT_VR_LITTLE_ENDIAN
    dataset = DataSet(transfer_syntax=transfer_syntax)
    _parse_dataset(data, pos, dataset, implicit=implicit)
    return ParsedFile(file_meta=file_meta, dataset=dataset)


def _require(data: bytes, pos: int, count: int, what: str) -> None:
    if pos + count > len(data):
        raise TruncatedElement(f"{what} needs {count} bytes at offset {pos}, file ends at {len(data)}")


def _parse_group_0002(data: bytes, pos: int, out: DataSet) -> int:
    """Parse consecutive (0002,xxxx) elements as explicit VR little endian."""
    prev: Tag | None = None
    while pos + 4 <= len(data):
        group, element = _HEADER.unpack_from(data, pos)
        if group != 0x0002:
            break
        elem, pos = _parse_element(data, pos, implicit=False)
        prev = _check_order(prev, elem.tag)
        out.insert(elem)
    return pos


def _parse_dataset(data: bytes, pos: int, out: DataSet, *, implicit: bool) -> None:
    prev: Tag | None = None
    while pos < len(data):
        elem, pos = _parse_element(data, pos, implicit=implicit)
        prev = _check_order(prev, elem.tag)
        out.insert(elem)


def _check_order(prev: Tag | None, tag: Tag) -> Tag:
    if prev is not None and tag <= prev:
        raise MalformedElement(f"tag {tag} does not increase after {prev}")
    return tag


def _parse_element(data: bytes, pos: int, *, implicit: bool) -> tuple[DataElement, int]:
    _require(data, pos, 8, "element header")
    group, element = _HEADER.unpack_from(data, pos)
    tag = Tag(group, element)

    if implicit:
        length = _U32.unpack_from(data, pos + 4)[0]
        vr = VR_DICTIONARY.get(tag, "UN")
        pos += 8
    else:
        vr_bytes = data[pos + 4 : pos + 6]
        try:
            vr = vr_bytes.decode("ascii")
        except UnicodeDecodeError:
            raise MalformedElement(f"{tag}: VR bytes {vr_bytes!r} are not ASCII") from None
        if vr not in SUPPORTED_VRS:
            raise MalformedElement(f"{tag}: unsupported VR {vr!r}")
        if vr in LONG_FORM_VRS:
            _require(data, pos, 12, "long-form element header")
            length = _U32.unpack_from(data, pos + 8)[0]
            pos += 12
        else:
            length = _U16.unpack_from(data, pos + 6)[0]
            pos += 8

    if length == UNDEFINED_LENGTH:
        # Only sequences may use undefined length here; encapsulated pixel
        # data never appears in the two native syntaxes we accept.
        if vr not in ("SQ", "UN"):
            raise MalformedElement(f"{tag}: undefined length is invalid for VR {vr}")
        start = pos
        pos = _skip_undefined_sequence(data, pos, implicit=implicit)
        value = data[start : pos - 8]  # exclude the sequence delimiter itself
        return DataElement(tag=tag, vr="SQ", length=UNDEFINED_LENGTH, value=value), pos

    if length % 2:
        raise MalformedElement(f"{tag}: value length {length} is odd")
    _require(data, pos, length, f"{tag} value")
    value = data[pos : pos + length]
    return DataElement(tag=tag, vr=vr, length=length, value=value), pos + length


def _skip_undefined_sequence(data: bytes, pos: int, *, implicit: bool) -> int:
    """Skip an undefined-length sequence; returns the offset just past the
    (FFFE,E0DD) sequence delimiter."""
    while True:
        _require(data, pos, 8, "sequence item header")
        group, element = _HEADER.unpack_from(data, pos)
        length = _U32.unpack_from(data, pos + 4)[0]
        tag = Tag(group, element)
        pos += 8
        if tag == SEQUENCE_DELIMITER:
            return pos
        if tag != ITEM:
            raise MalformedElement(f"expected item tag in sequence, found {tag}")
        if length == UNDEFINED_LENGTH:
            pos = _skip_undefined_item(data, pos, implicit=implicit)
        else:
            _require(data, pos, length, "sequence item")
            pos += length


def _skip_undefined_item(data: bytes, pos: int, *, implicit: bool) -> int:
    """Skip elements of an undefined-length item up to its (FFFE,E00D)
    delimiter; nested undefined-length sequences recurse."""
    while True:
        _require(data, pos, 8, "item element header")
        group, element = _HEADER.unpack_from(data, pos)
        tag = Tag(group, element)
        if tag == ITEM_DELIMITER:
            return pos + 8

        if implicit:
            length = _U32.unpack_from(data, pos + 4)[0]
            vr = VR_DICTIONARY.get(tag, "UN")
            pos += 8
        else:
            try:
                vr = data[pos + 4 : pos + 6].decode("ascii")
            except UnicodeDecodeError:
                raise MalformedElement(f"{tag}: VR bytes inside item are not ASCII") from None
            if vr not in SUPPORTED_VRS:
                raise MalformedElement(f"{tag}: unsupported VR {vr!r} inside item")
            if vr in LONG_FORM_VRS:
                _require(data, pos, 12, "long-form element header")
                length = _U32.unpack_from(data, pos + 8)[0]
                pos += 12
            else:
                length = _U16.unpack_from(data, pos + 6)[0]
                pos += 8

        if length == UNDEFINED_LENGTH:
            if vr not in ("SQ", "UN"):
                raise MalformedElement(f"{tag}: undefined length inside item for VR {vr}")
            pos = _skip_undefined_sequence(data, pos, implicit=implicit)
        else:
            _require(data, pos, length, f"{tag} value inside item")
            pos += length
