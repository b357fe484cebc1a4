"""Configuration: process settings and experiment files."""

from .application_config import ApplicationConfig, get_config
from .experiment_config import ExperimentConfig, load_experiment_config

__all__ = ["ApplicationConfig", "ExperimentConfig", "get_config", "load_experiment_config"]
