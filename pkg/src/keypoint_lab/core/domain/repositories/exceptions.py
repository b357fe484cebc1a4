"""Repository-specific exceptions."""

from __future__ import annotations


class RepositoryError(Exception):
    """Base exception for repository operations."""

    def __init__(self, message: str, cause: Exception | None = None) -> None:
        """Initialize repository error.

        Args:
            message: Error description
            cause: Optional underlying exception
        """
        super().__init__(message)
        self.cause = cause


class ArtifactNotFoundError(RepositoryError):
    """Exception raised when a stored artifact does not exist."""

    def __init__(self, artifact_type: str, location: str) -> None:
        """Initialize artifact not found error.

        Args:
            artifact_type: Kind of artifact that was looked up
            location: Where it was expected
        """
        super().__init__(f"{artifact_type} not found at '{location}'")
        self.artifact_type = artifact_type
        self.location = location


class CorruptArtifactError(RepositoryError):
    """Exception raised when a stored artifact cannot be decoded."""

    def __init__(self, location: str, reason: str) -> None:
        """Initialize corrupt artifact error.

        Args:
            location: Path of the unreadable artifact
            reason: What was wrong with it
        """
        super().__init__(f"corrupt artifact '{location}': {reason}")
        self.location = location
        self.reason = reason


class OrdinalMismatchError(RepositoryError):
    """Exception raised when appended records do not continue the cloud sequence."""

    def __init__(self, expected: int, actual: int) -> None:
        """Initialize ordinal mismatch error.

        Args:
            expected: Next free cloud ordinal
            actual: Ordinal carried by the record
        """
        super().__init__(f"expected cloud ordinal {expected}, got {actual}")
        self.expected = expected
        self.actual = actual
