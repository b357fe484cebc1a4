"""Main CLI entry point for Keypoint Lab."""

import click
from dependency_injector import providers

from keypoint_lab import __version__
from keypoint_lab.config.application_config import get_config
from keypoint_lab.infrastructure.app_composition_container import Container

from .commands.collect import collect as collect_command
from .commands.create import create as create_command
from .commands.eval import eval_ as eval_command
from .commands.gen_tools import gen_tools as gen_tools_command
from .commands.render import render as render_command
from .commands.train import train as train_command


@click.group()
@click.version_option(version=__version__, prog_name="keypoint-lab")
@click.option("--verbose", is_flag=True, help="Log at DEBUG level")
@click.option("--quiet", is_flag=True, help="Log warnings and errors only")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, quiet: bool) -> None:
    """Keypoint Lab - keypoint-based tool manipulation bench.

    Generates procedural tools, collects self-supervised episodes in a
    planar simulator, trains the keypoint networks and evaluates them
    against heuristic and template baselines.
    """
    ctx.ensure_object(dict)

    container = Container()
    if verbose or quiet:
        level = "DEBUG" if verbose else "WARNING"
        container.config.override(
            providers.Singleton(lambda: get_config().model_copy(update={"log_level": level}))
        )

    ctx.obj["container"] = container
    ctx.obj["verbose"] = verbose
    ctx.obj["quiet"] = quiet


cli.add_command(gen_tools_command, name="gen-tools")
cli.add_command(collect_command, name="collect")
cli.add_command(train_command, name="train")
cli.add_command(eval_command, name="eval")
cli.add_command(create_command, name="create")
cli.add_command(render_command, name="render")


if __name__ == "__main__":
    cli()
