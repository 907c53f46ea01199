"""Exception hierarchy and diagnostic warning categories."""


class NbrwError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(NbrwError):
    """Malformed graph description text."""


class DegreeError(NbrwError):
    """A vertex violates the minimum-degree requirement."""


class DisconnectedError(NbrwError):
    """The graph is not connected."""


class UnknownVertexError(NbrwError):
    """A vertex label does not exist in the graph."""


class BadParamsError(NbrwError):
    """Arguments are out of range or inconsistent for the requested operation."""


class NotRegularError(NbrwError):
    """An operation requiring a regular graph received a non-regular one."""


class AllZeroError(NbrwError):
    """A growth-rate estimate was requested for an identically zero sequence."""


class BudgetExceededError(NbrwError):
    """An enumeration or truncation exceeded its configured work budget."""

    def __init__(self, message: str, visited: int | None = None):
        super().__init__(message)
        self.visited = visited


class NoConvergenceError(NbrwError):
    """An iterative estimate failed to stabilize within its iteration cap."""


class DenseCyclesUnverified(UserWarning):
    """Could not certify that every vertex has a short cycle nearby.

    Estimates that rely on cycles re-entering every neighborhood degrade to
    one-sided bounds when this holds, so callers get a warning rather than
    a hard failure.
    """


class PrerequisiteUnverified(UserWarning):
    """A diagnostic ran without one of its theoretical hypotheses confirmed."""
