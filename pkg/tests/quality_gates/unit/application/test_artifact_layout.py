"""Tests for artifact naming."""

from pathlib import Path

import pytest

from keypoint_lab.core.application.services.artifact_layout import (
    MATRIX_CATEGORIES,
    TRAIN_CATEGORIES,
    categories_for,
    dataset_dir,
    model_name,
    model_prefix,
)
from keypoint_lab.core.domain.value_objects.learning import HeadKind
from keypoint_lab.core.domain.value_objects.task import TaskKind
from keypoint_lab.core.domain.value_objects.tool import ToolCategory


class TestArtifactLayout:
    """Test model and dataset names."""

    def test_categories_for_labels(self) -> None:
        """Test "all" and single-category labels."""
        assert categories_for("all") == (ToolCategory.HAMMER, ToolCategory.NON_HAMMER)
        assert categories_for("hammer") == (ToolCategory.HAMMER,)
        assert TRAIN_CATEGORIES == ("all", *MATRIX_CATEGORIES)
        assert MATRIX_CATEGORIES == ("hammer", "non-hammer")

    def test_unknown_label(self) -> None:
        """Test that only known categories are accepted."""
        with pytest.raises(ValueError):
            categories_for("spoon")

    def test_names(self) -> None:
        """Test prefix, model name and dataset directory."""
        assert model_prefix(TaskKind.REACHING, "all") == "reaching-all"
        assert (
            model_name(TaskKind.PUSHING, "hammer", HeadKind.EVALUATION)
            == "pushing-hammer-evaluation"
        )
        assert dataset_dir(Path("out"), TaskKind.HAMMERING, "all") == Path(
            "out/datasets/hammering-all"
        )
