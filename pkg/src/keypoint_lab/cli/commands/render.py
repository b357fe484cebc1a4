"""render command implementation."""

from pathlib import Path

import click

from keypoint_lab.core.domain.services.geometry import STREAM_SCENE, derive_seed
from keypoint_lab.core.domain.services.keypoints import heuristic_keypoints
from keypoint_lab.core.domain.services.simulator import make_task
from keypoint_lab.core.domain.value_objects.keypoints import ToolKeypoints
from keypoint_lab.core.domain.value_objects.task import TaskKind
from keypoint_lab.infrastructure.io.cloud_codec import read_clouds

from ..options import common_options, console, guarded, prepare_run
from ._choices import TASK_CHOICE


@click.command()
@common_options
@click.option(
    "--cloud",
    "cloud_path",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="KETO cloud file",
)
@click.option("--index", type=click.IntRange(0), default=0, show_default=True)
@click.option(
    "--keypoints",
    "keypoint_text",
    default=None,
    help="gx,gy,fx,fy,ex,ey (default: heuristic keypoints for --task)",
)
@click.option("--task", type=TASK_CHOICE, default=None, help="Draw this task's force arrow")
@click.option("--name", default=None, help="Output file stem")
@click.pass_context
@guarded("rendering")
def render(
    ctx: click.Context,
    config_path: Path | None,
    seed: int | None,
    out: Path | None,
    paper_scale: bool,
    cloud_path: Path,
    index: int,
    keypoint_text: str | None,
    task: str | None,
    name: str | None,
) -> None:
    """Render one stored cloud with keypoints as SVG under render/."""
    config = prepare_run(ctx, "render", config_path, seed, out, paper_scale)
    keypoints = ToolKeypoints.parse(keypoint_text) if keypoint_text is not None else None
    clouds = read_clouds(cloud_path)
    if index >= len(clouds):
        raise ValueError(f"{cloud_path} holds {len(clouds)} clouds, no index {index}")
    cloud = clouds[index]

    env = None
    if task is not None:
        kind = TaskKind(task)
        env = make_task(kind, derive_seed(config.seed, STREAM_SCENE)).env_keypoints
        if keypoints is None:
            keypoints = heuristic_keypoints(cloud, kind, config.seed)

    renderer = ctx.obj["container"].svg_renderer()
    target = config.output_dir / "render" / f"{name or f'{cloud_path.stem}-{index}'}.svg"
    renderer.write(target, renderer.render_keypoints(cloud, keypoints, env))
    console.print(f"✓ Rendered {target}", style="green")
