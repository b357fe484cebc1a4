"""Tests for logging configuration."""

import logging
import sys
from unittest.mock import MagicMock, patch

import numpy as np
import pytest
import structlog

from keypoint_lab.config.application_config import ApplicationConfig
from keypoint_lab.infrastructure.logging_setup import (
    bind_run_context,
    configure_logging,
    numpy_to_builtin,
)


class TestConfigureLogging:
    """Test configure_logging function."""

    @pytest.fixture
    def debug_config(self):
        """Create application config for debug mode."""
        config = MagicMock(spec=ApplicationConfig)
        config.log_level = "DEBUG"
        config.debug_mode = True
        return config

    @pytest.fixture
    def production_config(self):
        """Create application config for production mode."""
        config = MagicMock(spec=ApplicationConfig)
        config.log_level = "WARNING"
        config.debug_mode = False
        return config

    @patch("logging.basicConfig")
    @patch("structlog.configure")
    def test_debug_mode_renders_for_console(
        self, mock_structlog_configure, mock_logging_config, debug_config
    ):
        """Test that debug mode logs to stderr through the console renderer."""
        configure_logging(debug_config)

        mock_logging_config.assert_called_once_with(
            level=logging.DEBUG,
            format="%(message)s",
            stream=sys.stderr,
        )
        kwargs = mock_structlog_configure.call_args.kwargs
        assert isinstance(kwargs["processors"][-1], structlog.dev.ConsoleRenderer)
        assert kwargs["cache_logger_on_first_use"] is True

    @patch("logging.basicConfig")
    @patch("structlog.configure")
    def test_production_mode_renders_json(
        self, mock_structlog_configure, mock_logging_config, production_config
    ):
        """Test JSON lines outside debug mode."""
        configure_logging(production_config)

        mock_logging_config.assert_called_once_with(
            level=logging.WARNING,
            format="%(message)s",
            stream=sys.stderr,
        )
        processors = mock_structlog_configure.call_args.kwargs["processors"]
        assert isinstance(processors[-1], structlog.processors.JSONRenderer)
        assert structlog.contextvars.merge_contextvars in processors
        assert processors.index(numpy_to_builtin) == len(processors) - 2


class TestBindRunContext:
    """Test per-command context binding."""

    def test_replaces_previous_context(self):
        """Test that binding clears earlier values."""
        bind_run_context(command="collect", seed=1)
        bind_run_context(command="eval")

        assert structlog.contextvars.get_contextvars() == {"command": "eval"}
        structlog.contextvars.clear_contextvars()


class TestNumpyToBuiltin:
    """Test conversion of numpy values before rendering."""

    def test_converts_scalars_arrays_and_extra(self):
        """Test that nested numpy values become JSON-friendly builtins."""
        event = {
            "event": "Round finished",
            "successes": np.int64(3),
            "extra": {"rate": np.float32(0.5), "ids": np.arange(2)},
        }

        out = numpy_to_builtin(None, "info", event)

        assert out == {"event": "Round finished", "successes": 3, "extra": {"rate": 0.5, "ids": [0, 1]}}
        assert type(out["successes"]) is int
        assert type(out["extra"]["ids"]) is list
