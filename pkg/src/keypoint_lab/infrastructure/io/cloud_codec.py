"""Binary "KETO" point-cloud container.

Layout (little-endian): magic ``KETO``, u16 version, u32 cloud count, then
per cloud a u32 point count followed by that many (x, y, z) float32 triples.
"""

from __future__ import annotations

import struct
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from ...core.domain.repositories.exceptions import CorruptArtifactError
from ...core.domain.value_objects.geometry import PointCloud

MAGIC = b"KETO"
VERSION = 1
HEADER = struct.Struct("<4sHI")
COUNT_OFFSET = 6
POINT_DTYPE = np.dtype("<f4")
_U32 = struct.Struct("<I")


def encode_cloud_body(cloud: PointCloud) -> bytes:
    """One cloud without the container header."""
    body = np.ascontiguousarray(cloud.points, dtype=POINT_DTYPE)
    return _U32.pack(cloud.count) + body.tobytes()


def encode_clouds(clouds: Sequence[PointCloud]) -> bytes:
    """Full container holding ``clouds`` in order."""
    parts = [HEADER.pack(MAGIC, VERSION, len(clouds))]
    parts.extend(encode_cloud_body(c) for c in clouds)
    return b"".join(parts)


def decode_clouds(data: bytes, location: str = "<bytes>") -> list[PointCloud]:
    """Parse a container.

    Raises:
        CorruptArtifactError: On a bad header, truncation or trailing bytes
    """
    if len(data) < HEADER.size:
        raise CorruptArtifactError(location, "truncated header")
    magic, version, count = HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise CorruptArtifactError(location, f"bad magic {magic!r}")
    if version != VERSION:
        raise CorruptArtifactError(location, f"unsupported version {version}")
    offset = HEADER.size
    clouds = []
    for index in range(count):
        if offset + _U32.size > len(data):
            raise CorruptArtifactError(location, f"truncated at cloud {index}")
        (m,) = _U32.unpack_from(data, offset)
        offset += _U32.size
        nbytes = m * 3 * POINT_DTYPE.itemsize
        if offset + nbytes > len(data):
            raise CorruptArtifactError(location, f"truncated points of cloud {index}")
        points = np.frombuffer(data, dtype=POINT_DTYPE, count=m * 3, offset=offset)
        offset += nbytes
        try:
            clouds.append(PointCloud(points.reshape(m, 3).astype(np.float64)))
        except ValueError as e:
            raise CorruptArtifactError(location, str(e)) from e
    if offset != len(data):
        raise CorruptArtifactError(location, f"{len(data) - offset} trailing bytes")
    return clouds


def write_clouds(path: Path, clouds: Sequence[PointCloud]) -> None:
    """Write a fresh container, replacing ``path``."""
    path.write_bytes(encode_clouds(clouds))


def read_clouds(path: Path) -> list[PointCloud]:
    """Read every cloud stored at ``path``."""
    return decode_clouds(path.read_bytes(), str(path))


def append_clouds(path: Path, clouds: Iterable[PointCloud]) -> int:
    """Append clouds to a container, creating it if needed.

    The cloud count in the header is patched in place after the bodies are
    written.

    Returns:
        Cloud count after the append
    """
    bodies = [encode_cloud_body(c) for c in clouds]
    if not path.exists():
        write_clouds(path, [])
    with path.open("r+b") as handle:
        header = handle.read(HEADER.size)
        if len(header) < HEADER.size:
            raise CorruptArtifactError(str(path), "truncated header")
        magic, version, count = HEADER.unpack(header)
        if magic != MAGIC or version != VERSION:
            raise CorruptArtifactError(str(path), "not a KETO container")
        handle.seek(0, 2)
        for body in bodies:
            handle.write(body)
        total = count + len(bodies)
        handle.seek(COUNT_OFFSET)
        handle.write(_U32.pack(total))
    return total
