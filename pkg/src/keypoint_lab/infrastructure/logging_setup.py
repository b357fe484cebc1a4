"""Structured logging configuration for Keypoint Lab."""

import logging
import sys
from typing import Any

import numpy as np
import structlog

from keypoint_lab.config.application_config import ApplicationConfig


def numpy_to_builtin(_: Any, __: str, event_dict: dict[str, Any]) -> dict[str, Any]:
    """Replace numpy scalars and arrays (also inside ``extra``) with plain values."""

    def convert(value: Any) -> Any:
        if isinstance(value, np.generic):
            return value.item()
        if isinstance(value, np.ndarray):
            return value.tolist()
        if isinstance(value, dict):
            return {k: convert(v) for k, v in value.items()}
        return value

    return {key: convert(value) for key, value in event_dict.items()}


def configure_logging(config: ApplicationConfig) -> None:
    """Configure structlog for the process.

    Logs go to stderr so tables and files written by the CLI stay clean.
    Debug mode renders for a console; otherwise each event is a JSON line.

    Args:
        config: Application configuration containing log level and debug mode
    """
    log_level = getattr(logging, config.log_level.upper())

    logging.basicConfig(level=log_level, format="%(message)s", stream=sys.stderr)

    processors: list[Any] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.StackInfoRenderer(),
        structlog.dev.set_exc_info,
        structlog.processors.TimeStamper(fmt="ISO"),
        numpy_to_builtin,
    ]
    renderer = (
        structlog.dev.ConsoleRenderer() if config.debug_mode else structlog.processors.JSONRenderer()
    )

    structlog.configure(
        processors=[*processors, renderer],
        wrapper_class=structlog.make_filtering_bound_logger(log_level),
        logger_factory=structlog.WriteLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=True,
    )


def bind_run_context(**values: Any) -> None:
    """Attach values (command, seed, output directory) to every later event."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(**values)
