"""eval command implementation."""

from pathlib import Path

import click
from rich.table import Table

from keypoint_lab.core.application.services.artifact_layout import dataset_dir
from keypoint_lab.core.application.services.experiment_evaluator import (
    MethodUnderTest,
    methods_for_task,
    recompute_report,
)
from keypoint_lab.core.domain.value_objects.task import TaskKind

from ..options import EXIT_FAILED, common_options, console, err_console, guarded, prepare_run
from ._choices import TASK_CHOICE, selected_tasks


@click.command()
@common_options
@click.option("--task", type=TASK_CHOICE, default=None, help="Single task (default: all configured)")
@click.pass_context
@guarded("evaluating")
def eval_(
    ctx: click.Context,
    config_path: Path | None,
    seed: int | None,
    out: Path | None,
    paper_scale: bool,
    task: str | None,
) -> None:
    """Evaluate the configured methods on the held-out test tools.

    Writes eval/report.csv, eval/episodes.jsonl and eval/report.txt, then
    checks that the report recomputes exactly from the stored episodes.
    """
    config = prepare_run(ctx, "eval", config_path, seed, out, paper_scale)
    container = ctx.obj["container"]
    test_tools = container.tool_catalog_service().load("test")
    models = container.model_repository()

    methods: dict[TaskKind, list[MethodUnderTest]] = {}
    for kind in selected_tasks(task, config.scene.tasks):
        methods[kind] = methods_for_task(
            kind,
            config.eval.methods,
            models,
            lambda label, kind=kind: container.episode_dataset_repository(
                directory=dataset_dir(config.output_dir, kind, label)
            ),
            config.learner.proposal_count,
            config.eval.library_size,
        )

    evaluator = container.experiment_evaluator(
        seed=config.seed, scenes_per_tool=config.scene.scenes_per_tool
    )
    report, episodes = evaluator.evaluate(methods, test_tools)

    eval_dir = config.output_dir / "eval"
    writer = container.report_writer()
    writer.write_report(eval_dir / "report.csv", report)
    writer.write_episodes(eval_dir / "episodes.jsonl", episodes)
    writer.write_text(eval_dir / "report.txt", report)

    table = Table(title="Success rates")
    for column in ("Method", "Task", "Train", "Test", "Successes", "Rate", "95% CI"):
        table.add_column(column)
    for cell in report.cells:
        table.add_row(
            cell.method,
            cell.task,
            cell.train_category,
            cell.test_category,
            f"{cell.successes}/{cell.episodes}",
            f"{cell.rate:.3f}",
            f"[{cell.ci_low:.3f}, {cell.ci_high:.3f}]",
        )
    console.print(table)

    stored = writer.read_episodes(eval_dir / "episodes.jsonl")
    if [c.to_row() for c in recompute_report(stored)] != [c.to_row() for c in report.cells]:
        err_console.print("✗ Report does not recompute from stored episodes", style="red")
        ctx.exit(EXIT_FAILED)
    console.print(f"✓ Report written to {eval_dir}", style="green")
