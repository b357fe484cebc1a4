"""Options and error handling shared by every subcommand."""

from __future__ import annotations

import functools
import tomllib
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import click
from dependency_injector import providers
from pydantic import ValidationError
from rich.console import Console

from keypoint_lab.config.experiment_config import ExperimentConfig, load_experiment_config
from keypoint_lab.core.application.services.exceptions import (
    ArtifactIOError,
    ConfigurationError,
    MissingArtifactError,
)
from keypoint_lab.core.domain.repositories.exceptions import RepositoryError
from keypoint_lab.core.domain.services.exceptions import KeypointLabError
from keypoint_lab.infrastructure.app_composition_container import Container
from keypoint_lab.infrastructure.logging_setup import bind_run_context

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_VALIDATION = 2
EXIT_IO = 3

console = Console()
err_console = Console(stderr=True)

F = TypeVar("F", bound=Callable[..., Any])


def common_options(func: F) -> F:
    """Add --config, --seed, --out and --paper-scale."""
    func = click.option(
        "--paper-scale", is_flag=True, help="Use the full-size tool, learner and episode counts"
    )(func)
    func = click.option(
        "--out",
        "out",
        type=click.Path(file_okay=False, path_type=Path),
        default=None,
        help="Output directory (overrides output_dir)",
    )(func)
    func = click.option("--seed", type=int, default=None, help="Root seed (overrides seed)")(func)
    func = click.option(
        "--config",
        "config_path",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help="Experiment file (TOML); defaults apply to missing keys",
    )(func)
    return func


def exit_code_for(error: BaseException) -> int:
    """Process exit code for an error raised by a command."""
    if isinstance(error, MissingArtifactError | ArtifactIOError | RepositoryError | OSError):
        return EXIT_IO
    if isinstance(
        error,
        ValidationError
        | tomllib.TOMLDecodeError
        | KeypointLabError
        | ConfigurationError
        | ValueError,
    ):
        return EXIT_VALIDATION
    return EXIT_FAILED


def describe(error: BaseException) -> str:
    code = getattr(error, "code", None)
    return f"{code}: {error}" if isinstance(code, str) else str(error)


def guarded(action: str) -> Callable[[F], F]:
    """Turn errors escaping a command into a red message and an exit code."""

    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            ctx = click.get_current_context()
            try:
                return func(*args, **kwargs)
            except (click.exceptions.Exit, click.ClickException, click.Abort):
                raise
            except Exception as e:
                err_console.print(f"✗ Error {action}: {describe(e)}", style="red")
                code = exit_code_for(e)
            ctx.exit(code)

        return wrapper  # type: ignore[return-value]

    return decorator


def prepare_run(
    ctx: click.Context,
    command: str,
    config_path: Path | None,
    seed: int | None,
    out: Path | None,
    paper_scale: bool,
) -> ExperimentConfig:
    """Resolve the experiment configuration and point the container at its output.

    Raises:
        ValidationError: On an invalid experiment file or settings
        OSError: If the experiment file cannot be read
    """
    config = load_experiment_config(config_path).with_overrides(seed, out)
    if paper_scale:
        config = config.paper_scale()
    container: Container = ctx.obj["container"]
    container.output_dir.override(providers.Object(config.output_dir))
    container.logging_setup.init()
    bind_run_context(command=command, seed=config.seed, output_dir=str(config.output_dir))
    return config
