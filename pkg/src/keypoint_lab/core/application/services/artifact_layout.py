"""Names of the per-task artifacts inside an output directory."""

from __future__ import annotations

from pathlib import Path

from ...domain.value_objects.learning import HeadKind
from ...domain.value_objects.task import TaskKind
from ...domain.value_objects.tool import ToolCategory

ALL_CATEGORIES = "all"
# Rows and columns of the generalization matrix; "all" is reported on its own.
MATRIX_CATEGORIES = (ToolCategory.HAMMER.value, ToolCategory.NON_HAMMER.value)
TRAIN_CATEGORIES = (ALL_CATEGORIES, *MATRIX_CATEGORIES)


def categories_for(label: str) -> tuple[ToolCategory, ...]:
    """Tool categories behind a training category label ("all" or one category)."""
    if label == ALL_CATEGORIES:
        return (ToolCategory.HAMMER, ToolCategory.NON_HAMMER)
    return (ToolCategory(label),)


def model_prefix(task: TaskKind, label: str) -> str:
    return f"{task.value}-{label}"


def model_name(task: TaskKind, label: str, kind: HeadKind) -> str:
    return f"{model_prefix(task, label)}-{kind.value}"


def dataset_dir(output_dir: Path, task: TaskKind, label: str) -> Path:
    return output_dir / "datasets" / model_prefix(task, label)
