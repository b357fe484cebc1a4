"""train command implementation."""

import dataclasses
from pathlib import Path

import click

from keypoint_lab.core.application.services.artifact_layout import (
    ALL_CATEGORIES,
    dataset_dir,
    model_prefix,
)
from keypoint_lab.core.domain.services.geometry import STREAM_TRAIN, derive_seed

from ..options import common_options, console, guarded, prepare_run
from ._choices import CATEGORY_CHOICE, TASK_CHOICE, selected_tasks


@click.command()
@common_options
@click.option("--task", type=TASK_CHOICE, default=None, help="Single task (default: all configured)")
@click.option(
    "--category",
    type=CATEGORY_CHOICE,
    default=ALL_CATEGORIES,
    show_default=True,
    help="Dataset (training category) to train on",
)
@click.pass_context
@guarded("training")
def train(
    ctx: click.Context,
    config_path: Path | None,
    seed: int | None,
    out: Path | None,
    paper_scale: bool,
    task: str | None,
    category: str,
) -> None:
    """Retrain both heads from an existing dataset directory."""
    config = prepare_run(ctx, "train", config_path, seed, out, paper_scale)
    container = ctx.obj["container"]
    hyper = dataclasses.replace(
        config.hyper(), seed=derive_seed(config.seed, STREAM_TRAIN, config.loop.rounds)
    )

    for kind in selected_tasks(task, config.scene.tasks):
        dataset = container.episode_dataset_repository(
            directory=dataset_dir(config.output_dir, kind, category)
        )
        service = container.self_supervision_service(dataset_repository=dataset)
        _, _, retrained = service.train_models(hyper, model_prefix(kind, category))
        note = "" if retrained else " (evaluation head untrained: single-class data)"
        console.print(
            f"✓ Trained {model_prefix(kind, category)} on {dataset.record_count()} episodes{note}",
            style="green" if retrained else "yellow",
        )
