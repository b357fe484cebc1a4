"""Experiment configuration file model.

The file is TOML: sections of ``key = value`` lines. Every key has a
default, and unknown sections or keys are rejected.
"""

from __future__ import annotations

import tomllib
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..core.domain.value_objects.episode import LoopConfig
from ..core.domain.value_objects.learning import Hyper
from ..core.domain.value_objects.task import TaskKind
from ..core.domain.value_objects.tool import ToolCategory

METHODS = ("heuristic", "template", "learned")
# Wider than the split and category offsets of the tool catalog.
TOOL_SEED_BLOCK = 10_000_000


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ToolsSection(_Section):
    per_category: int = Field(default=50, ge=1, description="Tools per category per split")
    points: int = Field(default=1024, ge=64, description="Points per rendered cloud (M)")
    noise_sd: float = Field(default=0.001, ge=0.0, description="Planar noise in meters")
    seed_base: int = Field(default=0, ge=0, description="First tool seed")


class SceneSection(_Section):
    tasks: tuple[TaskKind, ...] = Field(default=tuple(TaskKind))
    scenes_per_tool: int = Field(default=1, ge=1, description="Evaluation scenes per test tool")

    @field_validator("tasks")
    @classmethod
    def _non_empty(cls, value: tuple[TaskKind, ...]) -> tuple[TaskKind, ...]:
        if not value:
            raise ValueError("at least one task is required")
        return value


class LearnerSection(_Section):
    proposal_count: int = Field(default=64, ge=1, description="Candidates per prediction (B)")
    iterations: int = Field(default=5000, ge=1)
    batch_size: int = Field(default=64, ge=1)
    learning_rate: float = Field(default=1e-3, gt=0.0)
    latent_dim: int = Field(default=4, ge=1)
    kl_weight: float = Field(default=0.1, ge=0.0)
    train_points: int = Field(default=256, ge=1)


class LoopSection(_Section):
    episodes_per_round: int = Field(default=1000, ge=1)
    rounds: int = Field(default=3, ge=1)
    p_heuristic: tuple[float, ...] = Field(default=(1.0, 0.3, 0.0))
    categories: tuple[ToolCategory, ...] = Field(
        default=(ToolCategory.HAMMER, ToolCategory.NON_HAMMER)
    )

    @model_validator(mode="after")
    def _schedule_matches_rounds(self) -> LoopSection:
        if len(self.p_heuristic) != self.rounds:
            raise ValueError(
                f"p_heuristic has {len(self.p_heuristic)} entries for {self.rounds} rounds"
            )
        if not self.categories:
            raise ValueError("at least one tool category is required")
        return self


class EvalSection(_Section):
    methods: tuple[str, ...] = Field(default=METHODS)
    library_size: int = Field(default=200, ge=1, description="Template library cap")

    @field_validator("methods")
    @classmethod
    def _known_methods(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        unknown = [m for m in value if m not in METHODS]
        if unknown or not value:
            raise ValueError(f"methods must be a non-empty subset of {METHODS}, got {value}")
        return value


class ExperimentConfig(_Section):
    """One experiment: tools, scenes, learner, loop and evaluation settings."""

    seed: int = Field(default=0, ge=0)
    output_dir: Path = Field(default=Path("runs/default"))
    tools: ToolsSection = Field(default_factory=ToolsSection)
    scene: SceneSection = Field(default_factory=SceneSection)
    learner: LearnerSection = Field(default_factory=LearnerSection)
    loop: LoopSection = Field(default_factory=LoopSection)
    eval: EvalSection = Field(default_factory=EvalSection)

    @property
    def tool_seed_base(self) -> int:
        """First tool seed; each root seed owns a disjoint block of tool seeds."""
        return self.tools.seed_base + TOOL_SEED_BLOCK * self.seed

    def with_overrides(
        self, seed: int | None = None, output_dir: Path | None = None
    ) -> ExperimentConfig:
        """Copy with command-line overrides applied."""
        update: dict[str, Any] = {}
        if seed is not None:
            update["seed"] = seed
        if output_dir is not None:
            update["output_dir"] = Path(output_dir)
        return self.model_validate({**self.model_dump(), **update})

    def paper_scale(self) -> ExperimentConfig:
        """Copy with the full-size tool counts, learner and episode budget."""
        data = self.model_dump()
        data["tools"]["per_category"] = 300
        data["learner"].update(
            proposal_count=256, iterations=120_000, batch_size=128, learning_rate=1e-4
        )
        data["loop"]["episodes_per_round"] = 33_334
        return self.model_validate(data)

    def hyper(self) -> Hyper:
        """Learner hyper-parameters; the loop reseeds them per round."""
        return Hyper(
            learning_rate=self.learner.learning_rate,
            batch_size=self.learner.batch_size,
            iterations=self.learner.iterations,
            latent_dim=self.learner.latent_dim,
            kl_weight=self.learner.kl_weight,
            seed=self.seed,
            train_points=self.learner.train_points,
        )

    def loop_config(
        self,
        task: TaskKind,
        threads: int,
        categories: tuple[ToolCategory, ...] | None = None,
    ) -> LoopConfig:
        return LoopConfig(
            task=task,
            episodes_per_round=self.loop.episodes_per_round,
            p_heuristic=self.loop.p_heuristic,
            categories=categories or self.loop.categories,
            seed=self.seed,
            proposal_count=self.learner.proposal_count,
            threads=threads,
        )

    def echo(self) -> str:
        """Canonical text of the resolved configuration, for manifests."""
        return self.model_dump_json(indent=2, exclude={"output_dir"})


def load_experiment_config(path: Path | None) -> ExperimentConfig:
    """Read an experiment file, or the defaults when ``path`` is None.

    Raises:
        OSError: If the file cannot be read
        tomllib.TOMLDecodeError: If the file is not valid TOML
        pydantic.ValidationError: On unknown keys or invalid values
    """
    if path is None:
        return ExperimentConfig()
    with Path(path).open("rb") as handle:
        data = tomllib.load(handle)
    return ExperimentConfig.model_validate(data)
