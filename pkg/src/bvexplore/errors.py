"""Exception types raised by the library (never by a system under test)."""


class BoundaryError(Exception):
    """Base class for library errors."""


class ArityMismatch(BoundaryError, ValueError):
    pass


class ZeroInputDistance(BoundaryError, ValueError):
    pass


class UnknownClass(BoundaryError, KeyError):
    pass


class EmptyArchive(BoundaryError, LookupError):
    pass


class DegenerateParent(BoundaryError, ValueError):
    pass


class InsufficientCandidates(BoundaryError, ValueError):
    pass


class EmptyInput(BoundaryError, ValueError):
    pass


class UnknownCell(BoundaryError, KeyError):
    pass


class EmptyUniverse(BoundaryError, ValueError):
    pass


class ArityUnsupported(BoundaryError, ValueError):
    pass


class ConfigError(BoundaryError, ValueError):
    pass


class SchemaError(BoundaryError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EvaluationMismatch(UserWarning):
    """Recorded output of an imported candidate disagrees with re-evaluation."""
