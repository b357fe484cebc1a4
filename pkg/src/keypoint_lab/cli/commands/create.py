"""create command implementation."""

from pathlib import Path

import click
from rich.table import Table

from keypoint_lab.core.application.services.artifact_layout import ALL_CATEGORIES, model_name
from keypoint_lab.core.application.services.tool_creation import desired_keypoints
from keypoint_lab.core.domain.value_objects.creation import CreationOptions
from keypoint_lab.core.domain.value_objects.learning import HeadKind
from keypoint_lab.core.domain.value_objects.task import TaskKind

from ..options import common_options, console, guarded, prepare_run
from ._choices import TASK_CHOICE


@click.command()
@common_options
@click.option("--task", type=TASK_CHOICE, default=TaskKind.HAMMERING.value, show_default=True)
@click.option(
    "--parts",
    type=click.IntRange(0, 4),
    default=0,
    show_default=True,
    help="Random parts to compose; 0 uses the stick and block",
)
@click.option("--model", default=None, help="Evaluation model (default: <task>-all-evaluation)")
@click.option("--max-iters", type=click.IntRange(0), default=100, show_default=True)
@click.option("--step", type=float, default=0.05, show_default=True, help="Pose step length")
@click.option("--frames", is_flag=True, help="Also render one SVG per accepted step")
@click.pass_context
@guarded("creating a tool")
def create(
    ctx: click.Context,
    config_path: Path | None,
    seed: int | None,
    out: Path | None,
    paper_scale: bool,
    task: str,
    parts: int,
    model: str | None,
    max_iters: int,
    step: float,
    frames: bool,
) -> None:
    """Arrange parts into a tool that scores well for the task keypoints."""
    config = prepare_run(ctx, "create", config_path, seed, out, paper_scale)
    container = ctx.obj["container"]
    kind = TaskKind(task)
    service = container.tool_creation_service()
    evaluation = service.load_evaluation(
        model or model_name(kind, ALL_CATEGORIES, HeadKind.EVALUATION)
    )

    part_specs = service.fixed_parts() if parts == 0 else service.random_parts(parts, config.seed)
    clouds = service.render_parts(
        part_specs, config.tools.points, config.tools.noise_sd, config.seed
    )
    keypoints = desired_keypoints(kind)
    tool_id = f"created-{kind.value}-{config.seed}"
    created = service.create(
        part_specs,
        clouds,
        keypoints,
        evaluation,
        CreationOptions(max_iters=max_iters, step=step),
        tool_id,
        config.seed,
    )

    create_dir = config.output_dir / "create"
    writer = container.report_writer()
    writer.write_json(
        create_dir / f"{tool_id}.json",
        {
            "tool": created.spec.to_dict(),
            "keypoints": keypoints.to_list(),
            "scores": list(created.result.scores),
            "converged": created.result.converged,
            "gradient_norm": created.result.gradient_norm,
        },
    )
    renderer = container.svg_renderer()
    renderer.write(
        create_dir / f"{tool_id}.svg",
        renderer.render_keypoints(created.result.cloud, keypoints, title=tool_id),
    )
    if frames:
        for index, svg in enumerate(renderer.render_creation_frames(clouds, created.result, keypoints)):
            renderer.write(create_dir / "frames" / f"{tool_id}-{index:03d}.svg", svg)

    table = Table(title=f"Tool creation ({kind.value})")
    table.add_column("Initial score", justify="right")
    table.add_column("Final score", justify="right")
    table.add_column("Accepted steps", justify="right")
    table.add_column("Converged")
    table.add_row(
        f"{created.result.initial_score:.4f}",
        f"{created.result.final_score:.4f}",
        str(created.result.accepted_steps),
        "yes" if created.result.converged else "no",
    )
    console.print(table)
    console.print(f"✓ Created tool written to {create_dir}", style="green")
