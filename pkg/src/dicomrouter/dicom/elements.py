"""Data element and data set containers for parsed DICOM attributes."""
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .tags import Tag

# VR classification. SQ is handled separately (skipped structurally).
STRING_VRS = frozenset(
    {"AE", "AS", "CS", "DA", "DS", "DT", "IS", "LO", "LT", "PN", "SH", "ST", "TM", "UI"}
)
INT_VRS = {"US": "<H", "UL": "<L", "SS": "<h", "SL": "<l"}
BYTES_VRS = frozenset({"OB", "OW", "UN"})
SUPPORTED_VRS = STRING_VRS | frozenset(INT_VRS) | BYTES_VRS | {"SQ"}

# Explicit VR encodings that use a 12-byte header (2 reserved bytes + 4-byte length).
LONG_FORM_VRS = frozenset({"OB", "OW", "SQ", "UN"})

UNDEFINED_LENGTH = 0xFFFFFFFF


class ValueDecodeError(ValueError):
    """Raised when a stored value cannot be decoded as the requested type."""


@dataclass(frozen=True)
class DataElement:
    """One attribute: tag, VR, declared length, raw value bytes.

    ``length`` is the length field as declared in the stream; for skipped
    sequences it may be UNDEFINED_LENGTH while ``value`` holds the raw
    (undecoded) byte span of the sequence contents.
    """

    tag: Tag
    vr: str
    length: int
    value: bytes

    def text(self) -> str:
        """Decode a string VR value, trimming trailing padding.

        DICOM pads string values to even length with a space (NUL for UI).
        Bytes are treated as Latin-1; no specific-character-set handling.
        """
        if self.vr not in STRING_VRS:
            raise ValueDecodeError(f"VR {self.vr} is not a string VR")
        return self.value.decode("latin-1").rstrip(" \x00")

    def strings(self) -> list[str]:
        """Multi-valued string decode: backslash-separated components."""
        raw = self.text()
        return raw.split("\\") if raw else []

    def ints(self) -> list[int]:
        """Decode a binary integer VR (US/UL/SS/SL) into a list of ints."""
        fmt = INT_VRS.get(self.vr)
        if fmt is None:
            raise ValueDecodeError(f"VR {self.vr} is not a binary integer VR")
        width = struct.calcsize(fmt)
        if len(self.value) % width:
            raise ValueDecodeError(
                f"{self.tag} {self.vr} value length {len(self.value)} is not a multiple of {width}"
            )
        count = len(self.value) // width
        return list(struct.unpack("<" + fmt[1] * count, self.value))

    def first_int(self) -> int:
        values = self.ints()
        if not values:
            raise ValueDecodeError(f"{self.tag} has an empty integer value")
        return values[0]

    def decimals(self) -> list[float]:
        """Decode DS/IS numeric strings into floats."""
        if self.vr not in ("DS", "IS"):
            raise ValueDecodeError(f"VR {self.vr} is not a numeric string VR")
        out = []
        for part in self.strings():
            part = part.strip()
            if not part:
                continue
            try:
                out.append(float(part))
            except ValueError as exc:
                raise ValueDecodeError(f"{self.tag} {self.vr} value {part!r} is not numeric") from exc
        return out


@dataclass
class DataSet:
    """Ordered map of Tag to DataElement. Iteration follows insertion order,
    which the parser guarantees equals ascending tag order."""

    transfer_syntax: Optional[str] = None
    _elements: dict[Tag, DataElement] = field(default_factory=dict)

    def insert(self, element: DataElement) -> None:
        self._elements[element.tag] = element

    def get(self, tag: Tag) -> Optional[DataElement]:
        return self._elements.get(tag)

    def __contains__(self, tag: Tag) -> bool:
        return tag in self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[DataElement]:
        return iter(self._elements.values())

    def tags(self) -> list[Tag]:
        return list(self._elements)


def get_element(dataset: DataSet, tag: Tag) -> Optional[DataElement]:
    """Lookup by tag; absent tags return None, never an error."""
    return dataset.get(tag)
