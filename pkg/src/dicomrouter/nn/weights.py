"""Portable weight file format.

Layout (little endian throughout):

    magic   4 bytes  "RNMW"
    version u16
    count   u32                      number of tensors
    per tensor:
        name_len u16, name UTF-8
        rank     u8
        dims     u32 * rank
        data     float32 * prod(dims)

Round-trips float32 parameters bit-exactly.
"""
from __future__ import annotations

import struct

import numpy as np

from .network import ARCH_NAME, PARAM_ORDER, PARAM_SHAPES, ModelParams

MAGIC = b"RNMW"
VERSION = 1


class WeightsError(Exception):
    pass


class BadMagic(WeightsError):
    pass


class VersionUnsupported(WeightsError):
    pass


class TruncatedWeights(WeightsError):
    pass


class ShapeMismatchWithArchitecture(WeightsError):
    pass


def save_weights(params: ModelParams) -> bytes:
    out = bytearray()
    out += MAGIC
    out += struct.pack("<H", VERSION)
    out += struct.pack("<L", len(params.tensors))
    for name, tensor in params.tensors.items():
        encoded = name.encode("utf-8")
        out += struct.pack("<H", len(encoded))
        out += encoded
        out += struct.pack("<B", tensor.ndim)
        for dim in tensor.shape:
            out += struct.pack("<L", dim)
        out += np.ascontiguousarray(tensor, dtype="<f4").tobytes()
    return bytes(out)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, count: int) -> bytes:
        if self.pos + count > len(self.data):
            raise TruncatedWeights(f"need {count} bytes at offset {self.pos}, have {len(self.data)}")
        chunk = self.data[self.pos : self.pos + count]
        self.pos += count
        return chunk

    def u8(self) -> int:
        return self.take(1)[0]

    def u16(self) -> int:
        return struct.unpack("<H", self.take(2))[0]

    def u32(self) -> int:
        return struct.unpack("<L", self.take(4))[0]


def load_weights(data: bytes, validate_architecture: bool = True) -> ModelParams:
    reader = _Reader(data)
    if reader.take(4) != MAGIC:
        raise BadMagic("not a weight file (bad magic)")
    version = reader.u16()
    if version != VERSION:
        raise VersionUnsupported(f"weight file version {version}, supported: {VERSION}")
    count = reader.u32()

    tensors: dict[str, np.ndarray] = {}
    for _ in range(count):
        name = reader.take(reader.u16()).decode("utf-8")
        rank = reader.u8()
        dims = tuple(reader.u32() for _ in range(rank))
        size = int(np.prod(dims)) if dims else 1
        raw = reader.take(size * 4)
        tensors[name] = np.frombuffer(raw, dtype="<f4").reshape(dims).copy()

    if validate_architecture:
        if set(tensors) != set(PARAM_SHAPES):
            raise ShapeMismatchWithArchitecture(
                f"tensor names {sorted(tensors)} do not match {ARCH_NAME} ({sorted(PARAM_SHAPES)})"
            )
        for name, shape in PARAM_SHAPES.items():
            if tensors[name].shape != shape:
                raise ShapeMismatchWithArchitecture(
                    f"{name}: file shape {tensors[name].shape} != architecture shape {shape}"
                )
        tensors = {name: tensors[name] for name in PARAM_ORDER}

    return ModelParams(tensors)
