"""gen-tools command implementation."""

from pathlib import Path

import click
from rich.table import Table

from ..options import common_options, console, guarded, prepare_run


@click.command()
@common_options
@click.pass_context
@guarded("generating tools")
def gen_tools(
    ctx: click.Context,
    config_path: Path | None,
    seed: int | None,
    out: Path | None,
    paper_scale: bool,
) -> None:
    """Generate the train and test tool splits with their clouds."""
    config = prepare_run(ctx, "gen-tools", config_path, seed, out, paper_scale)
    service = ctx.obj["container"].tool_catalog_service()
    counts = service.generate(
        per_category=config.tools.per_category,
        points=config.tools.points,
        noise_sd=config.tools.noise_sd,
        seed_base=config.tool_seed_base,
    )

    table = Table(title="Generated tools")
    table.add_column("Split", style="cyan")
    table.add_column("Tools", justify="right")
    for split, count in counts.items():
        table.add_row(split, str(count))
    console.print(table)
    console.print(f"✓ Tools written to {config.output_dir / 'tools'}", style="green")
