"""Tests for the binary point-cloud container."""

from pathlib import Path

import numpy as np
import pytest

from keypoint_lab.core.domain.repositories.exceptions import CorruptArtifactError
from keypoint_lab.core.domain.value_objects.geometry import PointCloud
from keypoint_lab.infrastructure.io.cloud_codec import (
    HEADER,
    append_clouds,
    decode_clouds,
    encode_clouds,
    read_clouds,
    write_clouds,
)


def _clouds() -> list[PointCloud]:
    rng = np.random.default_rng(0)
    return [PointCloud(rng.normal(size=(5, 3))), PointCloud(rng.normal(size=(2, 3)))]


class TestEncodeDecode:
    """Test the container layout and its validation."""

    def test_layout(self) -> None:
        """Test magic, version, count and body sizes."""
        data = encode_clouds(_clouds())

        assert data[:4] == b"KETO"
        assert HEADER.unpack_from(data, 0) == (b"KETO", 1, 2)
        assert len(data) == HEADER.size + 2 * 4 + 7 * 3 * 4

    def test_float32_precision(self) -> None:
        """Test that decoded points equal the float32-rounded input."""
        clouds = _clouds()

        decoded = decode_clouds(encode_clouds(clouds))

        for original, back in zip(clouds, decoded, strict=True):
            np.testing.assert_array_equal(back.points, original.points.astype(np.float32))
            assert back.equals(original.quantized())

    def test_empty_container(self) -> None:
        """Test that zero clouds is a valid container."""
        assert decode_clouds(encode_clouds([])) == []

    @pytest.mark.parametrize(
        ("mutate", "reason"),
        [
            (lambda d: d[:3], "truncated header"),
            (lambda d: b"XXXX" + d[4:], "bad magic"),
            (lambda d: d[:4] + b"\x02\x00" + d[6:], "unsupported version"),
            (lambda d: d[:-4], "truncated points"),
            (lambda d: d + b"\x00", "trailing bytes"),
        ],
    )
    def test_corruption_detected(self, mutate, reason: str) -> None:
        """Test each malformed container case."""
        with pytest.raises(CorruptArtifactError, match=reason):
            decode_clouds(mutate(encode_clouds(_clouds())))


class TestFiles:
    """Test whole-file writes and appends."""

    def test_append_patches_count(self, tmp_path: Path) -> None:
        """Test that appends extend an existing container."""
        path = tmp_path / "clouds.keto"
        first, second = _clouds()

        assert append_clouds(path, [first]) == 1
        assert append_clouds(path, [second]) == 2
        assert [c.count for c in read_clouds(path)] == [5, 2]

    def test_write_replaces(self, tmp_path: Path) -> None:
        """Test that a write starts a fresh container."""
        path = tmp_path / "clouds.keto"
        write_clouds(path, _clouds())
        write_clouds(path, _clouds()[:1])

        assert len(read_clouds(path)) == 1

    def test_append_to_foreign_file(self, tmp_path: Path) -> None:
        """Test that appends refuse files of another format."""
        path = tmp_path / "other.bin"
        path.write_bytes(b"KETM" + bytes(8))

        with pytest.raises(CorruptArtifactError, match="not a KETO container"):
            append_clouds(path, _clouds())
