"""Exceptions for the qi4wop solver suite."""

from typing import Optional


class WOPError(Exception):
    """Base exception for qi4wop errors."""

    code = "wop-error"

    def __str__(self) -> str:
        message = super().__str__()
        return f"{self.code}: {message}" if message else self.code


class InstanceFormatError(WOPError):
    """Exception raised when an instance document cannot be parsed."""

    code = "instance-format"


class MalformedSolutionError(WOPError):
    """Exception raised when a solution references unknown items or locations."""

    code = "malformed-solution"


class InfeasibleSolutionError(WOPError):
    """Exception raised when an operation requires a feasible solution."""

    code = "infeasible-solution"


class InvalidWeightsError(WOPError):
    """Exception raised when objective weights are negative or both zero."""

    code = "invalid-weights"


class ModelError(WOPError):
    """Exception raised when a constrained model is inconsistent."""

    code = "model-error"


class StructurallyInfeasibleError(ModelError):
    """Exception raised when a non-stackable item has no eligible location."""

    code = "structurally infeasible"


class AssignmentError(WOPError):
    """Exception raised when an assignment is missing or out of domain."""

    code = "assignment-error"


class MultiPlacementError(AssignmentError):
    """Exception raised when an item is assigned to more than one location."""

    code = "multi-placement"


class OracleLimitError(WOPError):
    """Exception raised when a model exceeds the exact oracle limits."""

    code = "oracle-limit"


class FileFormatError(WOPError):
    """Exception raised when an exchange file cannot be parsed."""

    code = "parse-error"

    def __init__(
        self, message: str, line: Optional[int] = None, column: Optional[int] = None
    ) -> None:
        """Initialize with an optional source position."""
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class BackendError(WOPError):
    """Exception raised when a solver backend fails."""

    code = "backend-error"


class RemoteSampleSetMissingError(BackendError):
    """Exception raised when the remote drop directory holds no sample set."""

    code = "remote-missing"


class NoInitialSolutionError(WOPError):
    """Exception raised when initialization produced no feasible solution."""

    code = "no-initial-solution"


class GeneratorInfeasibleError(WOPError):
    """Exception raised when the generator cannot build a feasible instance."""

    code = "generator-infeasible"
