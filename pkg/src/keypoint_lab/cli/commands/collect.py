"""collect command implementation."""

from pathlib import Path

import click
from rich.table import Table

from keypoint_lab.core.application.dto.round_summary import RoundSummary
from keypoint_lab.core.application.services.artifact_layout import (
    ALL_CATEGORIES,
    categories_for,
    dataset_dir,
    model_prefix,
)
from keypoint_lab.core.domain.value_objects.tool import ToolCategory

from ..options import EXIT_FAILED, common_options, console, err_console, guarded, prepare_run
from ._choices import CATEGORY_CHOICE, TASK_CHOICE, selected_tasks


@click.command()
@common_options
@click.option("--task", type=TASK_CHOICE, default=None, help="Single task (default: all configured)")
@click.option(
    "--category",
    type=CATEGORY_CHOICE,
    default=ALL_CATEGORIES,
    show_default=True,
    help="Restrict training tools to one category",
)
@click.pass_context
@guarded("collecting episodes")
def collect(
    ctx: click.Context,
    config_path: Path | None,
    seed: int | None,
    out: Path | None,
    paper_scale: bool,
    task: str | None,
    category: str,
) -> None:
    """Run the self-supervision loop and train both heads per task.

    Each task gets its own dataset directory under datasets/ and its own
    pair of models; per-round success rates go to rounds.csv.
    """
    config = prepare_run(ctx, "collect", config_path, seed, out, paper_scale)
    container = ctx.obj["container"]
    categories: tuple[ToolCategory, ...] = categories_for(category)
    tools = container.tool_catalog_service().load("train", categories)
    writer = container.report_writer()
    threads = container.config().threads

    table = Table(title="Self-supervision rounds")
    for column in ("Task", "Round", "p_heuristic", "Episodes", "Success rate", "Dataset"):
        table.add_column(column, justify="right" if column != "Task" else "left")

    failed_audit = False
    for kind in selected_tasks(task, config.scene.tasks):
        directory = dataset_dir(config.output_dir, kind, category)
        dataset = container.episode_dataset_repository(directory=directory)
        service = container.self_supervision_service(dataset_repository=dataset)
        summaries: list[RoundSummary] = []

        def on_round(summary: RoundSummary, directory: Path = directory) -> None:
            summaries.append(summary)
            writer.write_rounds(directory / "rounds.csv", summaries)

        result = service.run_loop(
            config.loop_config(kind, threads, categories),
            tools,
            config.hyper(),
            model_prefix(kind, category),
            config_echo=config.echo(),
            on_round=on_round,
        )
        for s in result.rounds:
            table.add_row(
                s.task,
                str(s.round_index),
                f"{s.p_heuristic:.2f}",
                str(s.episodes),
                f"{s.rate:.3f}",
                str(s.dataset_size),
            )
        if result.audit_mismatches:
            failed_audit = True
            err_console.print(
                f"✗ Replay audit failed for {kind.value}: episodes {list(result.audit_mismatches)}",
                style="red",
            )

    console.print(table)
    if failed_audit:
        ctx.exit(EXIT_FAILED)
    console.print(f"✓ Datasets and models written to {config.output_dir}", style="green")
