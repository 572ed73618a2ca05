"""Dependency-free parser for the DICOM Part-10 subset this project routes."""

from .dump import dump_element, dump_file
from .elements import DataElement, DataSet, ValueDecodeError, get_element
from .parser import (
    DicomError,
    DicomParseError,
    MalformedElement,
    MissingMagic,
    ParsedFile,
    TruncatedElement,
    UnsupportedTransferSyntax,
    parse_file,
)
from .pixeldesc import (
    LengthMismatch,
    MissingRequiredTag,
    PixelDataMissing,
    PixelDescriptor,
    UnsupportedPixelFormat,
    extract_pixel_data,
    read_pixel_descriptor,
)
from .tags import Tag

__all__ = [
    "DataElement",
    "DataSet",
    "DicomError",
    "DicomParseError",
    "LengthMismatch",
    "MalformedElement",
    "MissingMagic",
    "MissingRequiredTag",
    "ParsedFile",
    "PixelDataMissing",
    "PixelDescriptor",
    "Tag",
    "TruncatedElement",
    "UnsupportedPixelFormat",
    "UnsupportedTransferSyntax",
    "ValueDecodeError",
    "dump_element",
    "dump_file",
    "extract_pixel_data",
    "get_element",
    "parse_file",
    "read_pixel_descriptor",
]
