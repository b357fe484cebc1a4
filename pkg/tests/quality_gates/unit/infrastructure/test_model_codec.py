"""Tests for the binary model container."""

from pathlib import Path

import numpy as np
import pytest

from keypoint_lab.core.domain.repositories.exceptions import CorruptArtifactError
from keypoint_lab.core.domain.services.learner import init_evaluation, init_proposal
from keypoint_lab.core.domain.value_objects.learning import HeadKind, Normalization
from keypoint_lab.infrastructure.io.model_codec import (
    HEADER,
    decode_model,
    encode_model,
    read_model,
    write_model,
)


class TestModelCodec:
    """Test model encoding, decoding and corruption handling."""

    def test_header_records_kind_and_layers(self) -> None:
        """Test the head kind byte and layer count."""
        params = init_proposal(4, 0)

        magic, version, code, layers = HEADER.unpack_from(encode_model(params), 0)

        assert (magic, version) == (b"KETM", 1)
        assert code == HeadKind.PROPOSAL.code
        assert layers == len(params.weights)

    def test_file_round_trip(self, tmp_path: Path) -> None:
        """Test that a written head reads back with its normalization."""
        params = init_evaluation(3, Normalization(train_points=128))
        path = tmp_path / "m.ketm"

        write_model(path, params)
        back = read_model(path)

        assert back.kind is HeadKind.EVALUATION
        assert back.dims == params.dims
        assert back.normalization == params.normalization
        for w, w2 in zip(params.weights, back.weights, strict=True):
            np.testing.assert_array_equal(w2, np.asarray(w, dtype=np.float32))

    def test_truncated_parameters(self) -> None:
        """Test that a short file is corrupt."""
        data = encode_model(init_evaluation(0))

        with pytest.raises(CorruptArtifactError, match="truncated"):
            decode_model(data[:-40])

    def test_unknown_head_kind(self) -> None:
        """Test that an unknown kind byte is corrupt."""
        data = bytearray(encode_model(init_evaluation(0)))
        data[6] = 9

        with pytest.raises(CorruptArtifactError):
            decode_model(bytes(data))

    def test_bad_magic(self) -> None:
        """Test that cloud containers are not models."""
        with pytest.raises(CorruptArtifactError, match="bad magic"):
            decode_model(b"KETO" + bytes(16))
