"""Exception types shared across the package."""


class PatrolError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(PatrolError):
    """Raised when an argument fails a precondition check."""


class MetricViolation(InvalidInput):
    """Raised when a distance matrix is not a metric.

    The offending entries are named in the message; for triangle-inequality
    failures the ``triple`` attribute carries the witnessing site indices.
    """

    def __init__(self, message: str, triple: tuple[int, int, int] | None = None):
        super().__init__(message)
        self.triple = triple


class LimitExceeded(PatrolError):
    """Raised when an exact procedure is asked for more than it can afford."""


class InfeasibleAssignment(PatrolError):
    """Raised when fewer robots are available than parts to cover."""


class NotConnected(PatrolError):
    """Raised when a graph operation requires connectivity and does not have it."""


class PreconditionViolated(PatrolError):
    """Raised when a structural precondition fails at runtime."""


class NotRenderable(PatrolError):
    """Raised when an instance has no planar embedding to draw."""
