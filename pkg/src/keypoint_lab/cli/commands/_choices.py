"""Click choices built from domain enums."""

import click

from keypoint_lab.core.application.services.artifact_layout import TRAIN_CATEGORIES
from keypoint_lab.core.domain.value_objects.task import TaskKind

TASK_CHOICE = click.Choice([t.value for t in TaskKind])
CATEGORY_CHOICE = click.Choice(list(TRAIN_CATEGORIES))


def selected_tasks(task: str | None, configured: tuple[TaskKind, ...]) -> tuple[TaskKind, ...]:
    """The --task value if given, else every configured task."""
    return (TaskKind(task),) if task else configured
