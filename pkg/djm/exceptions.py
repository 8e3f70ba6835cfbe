"""Global exceptions (data errors and internal consistency failures)."""

from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:  # pragma: no cover
    from djm.oracle import ValidationReport


class DjmValueError(ValueError):
    """Base `ValueError` for bad input data."""


class UpdateRangeError(DjmValueError):
    """Raised when an update would drive an edge weight below zero."""


class SelfLoopError(DjmValueError):
    """Raised when an update names the same node twice."""


class NodeRangeError(DjmValueError):
    """Raised when a node id lies outside `[0, n)`."""


class InstanceParseError(DjmValueError):
    """Raised on a malformed DJM instance file."""

    line_no: int | None

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class TraceParseError(InstanceParseError):
    """Raised on a malformed traffic trace row."""


@dataclass
class SplitEligibilityError(DjmValueError):
    """Raised when an instance has an edge weight above `y * z`."""

    weight: int
    limit: int

    def __str__(self) -> str:
        return (
            f"Instance cannot be split: edge weight {self.weight} exceeds "
            f"the sub-batch capacity {self.limit}."
        )


class OracleLimitError(DjmValueError):
    """Raised when the exact solver is asked to enumerate too many edges."""


class MetricsError(DjmValueError):
    """Raised when metric records are incomplete or inconsistent."""


class InvariantError(Exception):
    """Raised when an internal consistency check fails."""


class ContractViolationError(InvariantError):
    """Raised when an operation is called outside its precondition."""


class ValidationFailure(InvariantError):
    """Raised when a coloring fails validation after a batch."""

    report: "ValidationReport"

    def __init__(self, report: "ValidationReport", context: str = ""):
        self.report = report
        prefix = f"{context}: " if context else ""
        super().__init__(f"{prefix}{report.first_violation}")
