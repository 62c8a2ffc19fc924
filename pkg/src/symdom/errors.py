"""Structured exceptions shared across the library."""


class SymdomError(Exception):
    """Base class for all library errors."""


class FactorMismatch(SymdomError):
    """Operands belong to different factors."""


class DomainError(SymdomError):
    """An argument lies outside the open unit ball (or a stated precondition range)."""


class NotTripotent(SymdomError):
    """An element failed the tripotent test {e,e,e} = e, ||e|| = 1."""


class SingularOperator(SymdomError):
    """A requested operator inverse / negative power does not exist."""


class FrameAlignmentError(SymdomError):
    """Spectral frames of a sequence could not be matched across indices."""


class IterationLimitExceeded(SymdomError):
    """A fixed-point iteration hit its cap before converging."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class ConfigError(SymdomError):
    """Invalid run configuration or serialized specification."""
