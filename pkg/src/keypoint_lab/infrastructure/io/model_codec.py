"""Binary "KETM" model container.

Layout (little-endian): magic ``KETM``, u16 version, u8 head kind, u16
layer count, per layer u32 input and output width, then per layer the
weight matrix (row-major) and bias vector as float32, then the three
normalization constants as float64.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from ...core.domain.repositories.exceptions import CorruptArtifactError
from ...core.domain.value_objects.learning import HeadKind, NetParams, Normalization

MAGIC = b"KETM"
VERSION = 1
HEADER = struct.Struct("<4sHBH")
DIMS = struct.Struct("<II")
WEIGHT_DTYPE = np.dtype("<f4")
NORM_DTYPE = np.dtype("<f8")


def encode_model(params: NetParams) -> bytes:
    parts = [HEADER.pack(MAGIC, VERSION, params.kind.code, len(params.weights))]
    parts.extend(DIMS.pack(n_in, n_out) for n_in, n_out in params.dims)
    for w, b in zip(params.weights, params.biases, strict=True):
        parts.append(np.ascontiguousarray(w, dtype=WEIGHT_DTYPE).tobytes())
        parts.append(np.ascontiguousarray(b, dtype=WEIGHT_DTYPE).tobytes())
    parts.append(np.asarray(params.normalization.as_floats(), dtype=NORM_DTYPE).tobytes())
    return b"".join(parts)


def decode_model(data: bytes, location: str = "<bytes>") -> NetParams:
    """Parse a model container.

    Raises:
        CorruptArtifactError: On a bad header, truncation or invalid values
    """
    if len(data) < HEADER.size:
        raise CorruptArtifactError(location, "truncated header")
    magic, version, code, layers = HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise CorruptArtifactError(location, f"bad magic {magic!r}")
    if version != VERSION:
        raise CorruptArtifactError(location, f"unsupported version {version}")
    try:
        kind = HeadKind.from_code(code)
    except ValueError as e:
        raise CorruptArtifactError(location, str(e)) from e

    offset = HEADER.size
    if offset + layers * DIMS.size > len(data):
        raise CorruptArtifactError(location, "truncated layer table")
    dims = [DIMS.unpack_from(data, offset + i * DIMS.size) for i in range(layers)]
    offset += layers * DIMS.size

    def take(count: int, dtype: np.dtype) -> np.ndarray:
        nonlocal offset
        nbytes = count * dtype.itemsize
        if offset + nbytes > len(data):
            raise CorruptArtifactError(location, "truncated parameters")
        values = np.frombuffer(data, dtype=dtype, count=count, offset=offset)
        offset += nbytes
        return values

    weights, biases = [], []
    for n_in, n_out in dims:
        weights.append(take(n_in * n_out, WEIGHT_DTYPE).reshape(n_in, n_out))
        biases.append(take(n_out, WEIGHT_DTYPE))
    norm = take(3, NORM_DTYPE)
    if offset != len(data):
        raise CorruptArtifactError(location, f"{len(data) - offset} trailing bytes")
    try:
        normalization = Normalization.from_floats((float(norm[0]), float(norm[1]), float(norm[2])))
        return NetParams(kind, tuple(weights), tuple(biases), normalization)
    except ValueError as e:
        raise CorruptArtifactError(location, str(e)) from e


def write_model(path: Path, params: NetParams) -> None:
    path.write_bytes(encode_model(params))


def read_model(path: Path) -> NetParams:
    return decode_model(path.read_bytes(), str(path))
