"""Application service exceptions."""

from __future__ import annotations


class ApplicationServiceError(Exception):
    """Base exception for application service errors."""

    code = "application-error"

    def __init__(self, message: str, cause: Exception | None = None) -> None:
        """Initialize application service error.

        Args:
            message: Error message
            cause: Optional underlying exception
        """
        super().__init__(message)
        self.cause = cause


class MissingArtifactError(ApplicationServiceError):
    """Raised when a tool split, dataset or model an operation needs is absent."""

    code = "missing-artifact"


class ArtifactIOError(ApplicationServiceError):
    """Raised when reading or writing an experiment artifact fails."""

    code = "io-error"


class ConfigurationError(ApplicationServiceError):
    """Raised when an experiment configuration cannot be used as given."""

    code = "bad-config"
