"""DICOM tag type and the small data dictionary this project needs."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Tag:
    """A (group, element) attribute tag. Ordering is lexicographic."""

    group: int
    element: int

    def __post_init__(self) -> None:
        if not (0 <= self.group <= 0xFFFF and 0 <= self.element <= 0xFFFF):
            raise ValueError(f"tag components must be 16-bit: {self.group:#x},{self.element:#x}")

    def __str__(self) -> str:
        return f"{self.group:04X},{self.element:04X}"


# File meta (group 0002)
FILE_META_GROUP_LENGTH = Tag(0x0002, 0x0000)
MEDIA_STORAGE_SOP_CLASS_UID = Tag(0x0002, 0x0002)
MEDIA_STORAGE_SOP_INSTANCE_UID = Tag(0x0002, 0x0003)
TRANSFER_SYNTAX_UID = Tag(0x0002, 0x0010)
IMPLEMENTATION_CLASS_UID = Tag(0x0002, 0x0012)

# Identification / study
SPECIFIC_CHARACTER_SET = Tag(0x0008, 0x0005)
IMAGE_TYPE = Tag(0x0008, 0x0008)
SOP_CLASS_UID = Tag(0x0008, 0x0016)
SOP_INSTANCE_UID = Tag(0x0008, 0x0018)
STUDY_DATE = Tag(0x0008, 0x0020)
STUDY_TIME = Tag(0x0008, 0x0030)
ACCESSION_NUMBER = Tag(0x0008, 0x0050)
MODALITY = Tag(0x0008, 0x0060)
REFERRING_PHYSICIAN_NAME = Tag(0x0008, 0x0090)
PATIENT_NAME = Tag(0x0010, 0x0010)
PATIENT_ID = Tag(0x0010, 0x0020)
PATIENT_BIRTH_DATE = Tag(0x0010, 0x0030)
PATIENT_SEX = Tag(0x0010, 0x0040)
PATIENT_AGE = Tag(0x0010, 0x1010)
BODY_PART_EXAMINED = Tag(0x0018, 0x0015)
STUDY_INSTANCE_UID = Tag(0x0020, 0x000D)
SERIES_INSTANCE_UID = Tag(0x0020, 0x000E)
INSTANCE_NUMBER = Tag(0x0020, 0x0013)

# Image pixel module
SAMPLES_PER_PIXEL = Tag(0x0028, 0x0002)
PHOTOMETRIC_INTERPRETATION = Tag(0x0028, 0x0004)
ROWS = Tag(0x0028, 0x0010)
COLUMNS = Tag(0x0028, 0x0011)
PIXEL_SPACING = Tag(0x0028, 0x0030)
BITS_ALLOCATED = Tag(0x0028, 0x0100)
BITS_STORED = Tag(0x0028, 0x0101)
HIGH_BIT = Tag(0x0028, 0x0102)
PIXEL_REPRESENTATION = Tag(0x0028, 0x0103)
WINDOW_CENTER = Tag(0x0028, 0x1050)
WINDOW_WIDTH = Tag(0x0028, 0x1051)
RESCALE_INTERCEPT = Tag(0x0028, 0x1052)
RESCALE_SLOPE = Tag(0x0028, 0x1053)
RESCALE_TYPE = Tag(0x0028, 0x1054)
PIXEL_DATA = Tag(0x7FE0, 0x0010)

# Sequences this project may encounter (skipped, never decoded)
REFERENCED_IMAGE_SEQUENCE = Tag(0x0008, 0x1140)
ANATOMIC_REGION_SEQUENCE = Tag(0x0008, 0x2218)
REQUEST_ATTRIBUTES_SEQUENCE = Tag(0x0040, 0x0275)

# Item / delimiter tags used by sequence skipping
ITEM = Tag(0xFFFE, 0xE000)
ITEM_DELIMITER = Tag(0xFFFE, 0xE00D)
SEQUENCE_DELIMITER = Tag(0xFFFE, 0xE0DD)

IMPLICIT_VR_LITTLE_ENDIAN = "1.2.840.10008.1.2"
EXPLICIT_VR_LITTLE_ENDIAN = "1.2.840.10008.1.2.1"

# VR lookup for implicit VR parsing. Tags not listed parse as UN.
VR_DICTIONARY: dict[Tag, str] = {
    FILE_META_GROUP_LENGTH: "UL",
    MEDIA_STORAGE_SOP_CLASS_UID: "UI",
    MEDIA_STORAGE_SOP_INSTANCE_UID: "UI",
    TRANSFER_SYNTAX_UID: "UI",
    IMPLEMENTATION_CLASS_UID: "UI",
    SPECIFIC_CHARACTER_SET: "CS",
    IMAGE_TYPE: "CS",
    SOP_CLASS_UID: "UI",
    SOP_INSTANCE_UID: "UI",
    STUDY_DATE: "DA",
    STUDY_TIME: "TM",
    ACCESSION_NUMBER: "SH",
    MODALITY: "CS",
    REFERRING_PHYSICIAN_NAME: "PN",
    PATIENT_NAME: "PN",
    PATIENT_ID: "LO",
    PATIENT_BIRTH_DATE: "DA",
    PATIENT_SEX: "CS",
    PATIENT_AGE: "AS",
    BODY_PART_EXAMINED: "CS",
    STUDY_INSTANCE_UID: "UI",
    SERIES_INSTANCE_UID: "UI",
    INSTANCE_NUMBER: "IS",
    SAMPLES_PER_PIXEL: "US",
    PHOTOMETRIC_INTERPRETATION: "CS",
    ROWS: "US",
    COLUMNS: "US",
    PIXEL_SPACING: "DS",
    BITS_ALLOCATED: "US",
    BITS_STORED: "US",
    HIGH_BIT: "US",
    PIXEL_REPRESENTATION: "US",
    WINDOW_CENTER: "DS",
    WINDOW_WIDTH: "DS",
    RESCALE_INTERCEPT: "DS",
    RESCALE_SLOPE: "DS",
    RESCALE_TYPE: "LO",
    PIXEL_DATA: "OW",
    REFERENCED_IMAGE_SEQUENCE: "SQ",
    ANATOMIC_REGION_SEQUENCE: "SQ",
    REQUEST_ATTRIBUTES_SEQUENCE: "SQ",
}
