"""Tests for shared CLI options and error handling."""

import tomllib

import click
import pytest
from click.testing import CliRunner
from pydantic import BaseModel, ValidationError

from keypoint_lab.cli.commands._choices import selected_tasks
from keypoint_lab.cli.options import (
    EXIT_FAILED,
    EXIT_IO,
    EXIT_VALIDATION,
    describe,
    exit_code_for,
    guarded,
)
from keypoint_lab.core.application.services.exceptions import (
    ArtifactIOError,
    ConfigurationError,
    MissingArtifactError,
)
from keypoint_lab.core.domain.repositories.exceptions import ArtifactNotFoundError
from keypoint_lab.core.domain.services.exceptions import (
    BootstrapFailedError,
    InfeasibleConstraintsError,
)
from keypoint_lab.core.domain.value_objects.task import TaskKind


def _validation_error() -> ValidationError:
    class Model(BaseModel):
        value: int

    try:
        Model.model_validate({"value": "x"})
    except ValidationError as e:
        return e
    raise AssertionError("expected a validation error")


class TestExitCodes:
    """Test error to exit code mapping."""

    @pytest.mark.parametrize(
        "error",
        [
            MissingArtifactError("no tools"),
            ArtifactIOError("disk full"),
            ArtifactNotFoundError("model", "m"),
            OSError("denied"),
        ],
    )
    def test_io_errors(self, error: BaseException) -> None:
        """Test missing artifacts and filesystem failures."""
        assert exit_code_for(error) == EXIT_IO

    @pytest.mark.parametrize(
        "error",
        [
            ConfigurationError("bad"),
            ValueError("bad"),
            InfeasibleConstraintsError("box"),
            BootstrapFailedError("none"),
        ],
    )
    def test_validation_errors(self, error: BaseException) -> None:
        """Test invalid input and domain failures."""
        assert exit_code_for(error) == EXIT_VALIDATION

    def test_pydantic_and_toml_errors(self) -> None:
        """Test configuration parse failures."""
        assert exit_code_for(_validation_error()) == EXIT_VALIDATION
        assert exit_code_for(tomllib.TOMLDecodeError("bad toml")) == EXIT_VALIDATION

    def test_anything_else_failed(self) -> None:
        """Test the generic failure code."""
        assert exit_code_for(RuntimeError("boom")) == EXIT_FAILED

    def test_describe_prefixes_code(self) -> None:
        """Test that coded errors show their code."""
        assert describe(BootstrapFailedError("no success")) == "bootstrap-failed: no success"
        assert describe(RuntimeError("boom")) == "boom"


class TestGuarded:
    """Test the command error wrapper."""

    def _command(self, error: BaseException | None) -> click.Command:
        @click.command()
        @guarded("testing")
        def command() -> None:
            if error is not None:
                raise error
            click.echo("fine")

        return command

    def test_passes_through_success(self) -> None:
        """Test normal completion."""
        result = CliRunner().invoke(self._command(None))

        assert result.exit_code == 0
        assert "fine" in result.output

    def test_reports_and_exits(self) -> None:
        """Test the message and exit code of a failing command."""
        result = CliRunner().invoke(self._command(MissingArtifactError("no tools")))

        assert result.exit_code == EXIT_IO
        assert "Error testing: missing-artifact: no tools" in result.output

    def test_click_errors_untouched(self) -> None:
        """Test that usage errors keep click's handling."""
        result = CliRunner().invoke(self._command(click.UsageError("wrong")))

        assert result.exit_code == 2
        assert "wrong" in result.output


class TestSelectedTasks:
    """Test the --task fallback."""

    def test_single_or_configured(self) -> None:
        """Test explicit and configured task lists."""
        assert selected_tasks("pushing", tuple(TaskKind)) == (TaskKind.PUSHING,)
        assert selected_tasks(None, (TaskKind.REACHING,)) == (TaskKind.REACHING,)
