"""Filesystem implementation of ModelRepository."""

from __future__ import annotations

import re
from pathlib import Path

import structlog

from ....core.domain.repositories.exceptions import (
    ArtifactNotFoundError,
    CorruptArtifactError,
    RepositoryError,
)
from ....core.domain.repositories.model_repository import ModelRepository
from ....core.domain.value_objects.learning import HeadKind, NetParams
from ...io.model_codec import read_model, write_model

MODEL_SUFFIX = ".ketm"
_NAME = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


class ModelRepositoryImpl(ModelRepository):
    """Stores each head as ``<root>/models/<name>.ketm``."""

    def __init__(self, root: Path | str) -> None:
        """Initialize repository.

        Args:
            root: Output directory of the experiment
        """
        self._root = Path(root) / "models"
        self._logger = structlog.get_logger(__name__)

    def path_for(self, name: str) -> Path:
        """File holding model ``name``.

        Raises:
            ValueError: If the name is not a plain file stem
        """
        if not _NAME.match(name):
            raise ValueError(f"invalid model name: {name!r}")
        return self._root / f"{name}{MODEL_SUFFIX}"

    def save(self, name: str, params: NetParams) -> None:
        path = self.path_for(name)
        try:
            self._root.mkdir(parents=True, exist_ok=True)
            write_model(path, params)
        except OSError as e:
            raise RepositoryError(f"Failed to save model '{name}': {e}", e) from e
        self._logger.info(
            "Model saved",
            extra={"model": name, "kind": params.kind.value, "parameters": params.parameter_count},
        )

    def load(self, name: str, kind: HeadKind) -> NetParams:
        path = self.path_for(name)
        if not path.is_file():
            raise ArtifactNotFoundError("model", str(path))
        try:
            params = read_model(path)
        except OSError as e:
            raise RepositoryError(f"Failed to load model '{name}': {e}", e) from e
        if params.kind is not kind:
            raise CorruptArtifactError(
                str(path), f"expected a {kind.value} head, found {params.kind.value}"
            )
        return params

    def exists(self, name: str) -> bool:
        return self.path_for(name).is_file()
