"""Text dump of parsed data sets, one line per element.

Line format: ``GGGG,EEEE VR length value``. Sequences print ``*`` for an
undefined length and ``(sequence skipped)`` as their value. Binary VRs
(OB/OW/UN) print lowercase hex; US/UL/SS/SL print backslash-joined ints;
string VRs print the padding-trimmed text. Lines carry no trailing spaces.
"""
from __future__ import annotations

from .elements import BYTES_VRS, INT_VRS, STRING_VRS, UNDEFINED_LENGTH, DataElement
from .parser import ParsedFile


def dump_element(elem: DataElement) -> str:
    if elem.vr == "SQ":
        length = "*" if elem.length == UNDEFINED_LENGTH else str(elem.length)
        return f"{elem.tag} SQ {length} (sequence skipped)"
    if elem.vr in STRING_VRS:
        value = elem.text()
    elif elem.vr in INT_VRS:
        value = "\\".join(str(v) for v in elem.ints())
    elif elem.vr in BYTES_VRS:
        value = elem.value.hex()
    else:  # unreachable for parser output; keep dumps total anyway
        value = elem.value.hex()
    return f"{elem.tag} {elem.vr} {elem.length} {value}".rstrip()


def dump_file(parsed: ParsedFile) -> str:
    """Dump file meta followed by the main data set, newline terminated."""
    lines = [dump_element(e) for e in parsed.file_meta]
    lines.extend(dump_element(e) for e in parsed.dataset)
    return "\n".join(lines) + "\n"
