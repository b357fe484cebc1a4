"""Domain service exceptions.

Every error carries a stable ``code`` string; episode records and CLI
messages report the code rather than the class name.
"""

from __future__ import annotations


class KeypointLabError(Exception):
    """Base exception for domain operations."""

    code = "keypoint-lab-error"

    def __init__(self, message: str, cause: Exception | None = None) -> None:
        """Initialize domain error.

        Args:
            message: Error description
            cause: Optional underlying exception
        """
        super().__init__(message)
        self.cause = cause


class EmptyCloudError(KeypointLabError):
    """Raised when an operation receives a cloud without points."""

    code = "empty-cloud"


class DegenerateInputError(KeypointLabError):
    """Raised when geometric input admits no well-defined answer."""

    code = "degenerate-input"


class GenerationFailedError(KeypointLabError):
    """Raised when procedural generation exhausts its rejection budget."""

    code = "generation-failed"


class InvalidActionError(KeypointLabError):
    """Raised when a grasp or action passed to the simulator is not finite."""

    code = "invalid-action"


class EmptyLibraryError(KeypointLabError):
    """Raised when template matching has nothing to match against."""

    code = "empty-library"


class InfeasibleConstraintsError(KeypointLabError):
    """Raised when the QP box constraints have an empty intersection."""

    code = "infeasible-constraints"


class SolverStalledError(KeypointLabError):
    """Raised when the active-set solver exceeds its iteration budget."""

    code = "solver-stalled"

    def __init__(self, iterations: int) -> None:
        super().__init__(f"active-set solver did not converge in {iterations} iterations")
        self.iterations = iterations


class DegenerateOrientationError(KeypointLabError):
    """Raised when the optimized grasp and function points coincide."""

    code = "degenerate-orientation"


class NoGraspError(KeypointLabError):
    """Raised when there is no grasp candidate to select from."""

    code = "no-grasp"


class BadParamsError(KeypointLabError):
    """Raised when network parameters do not match the expected architecture."""

    code = "bad-params"


class ProposalCollapseError(KeypointLabError):
    """Raised when every proposed keypoint candidate is invalid."""

    code = "proposal-collapse"


class NoPositiveDataError(KeypointLabError):
    """Raised when training needs successful episodes and has none."""

    code = "no-positive-data"


class NoNegativeDataError(KeypointLabError):
    """Raised when training needs failed episodes and has none."""

    code = "no-negative-data"


class BootstrapFailedError(KeypointLabError):
    """Raised when the heuristic bootstrap round produced no successes."""

    code = "bootstrap-failed"


class BadPartsError(KeypointLabError):
    """Raised when part clouds and part poses do not line up."""

    code = "bad-parts"


class DivergedError(KeypointLabError):
    """Raised when tool creation produces a non-finite score."""

    code = "diverged"


class ParseError(KeypointLabError, ValueError):
    """Raised when a text artifact cannot be parsed."""

    code = "parse-error"


class InvalidKeypointsError(KeypointLabError):
    """Raised when generated keypoints fail validation."""

    code = "invalid-keypoints"
