"""Exception hierarchy shared across the engine."""


class GorError(Exception):
    """Base class for all engine errors."""


class RingMismatchError(GorError):
    """Operands live in different rings."""


class ParseError(GorError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotArtinianError(GorError):
    """The quotient has an infinite staircase up to the detection bound."""


class NotLevelError(GorError):
    """Idealization requires a level input algebra."""


class BadParameterError(GorError):
    """A family was requested with parameters outside its domain."""


class InfeasibleSizeError(GorError):
    """A computation exceeds the configured size/memory budget.

    Carries the estimate that tripped so callers and the CLI can report it.
    """

    def __init__(self, message, estimate=None, budget=None):
        self.estimate = estimate
        self.budget = budget
        super().__init__(message)


class VerificationError(GorError):
    """An internal cross-check failed; indicates a bug, never user error."""
