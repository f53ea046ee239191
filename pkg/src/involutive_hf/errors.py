"""Exception hierarchy shared by the library and the CLI."""


class ComplexError(ValueError):
    """Base class for malformed algebraic input."""


class HomogeneityError(ComplexError):
    """A matrix entry is incompatible with the gradings it connects."""


class StructureError(ComplexError):
    """Index sets or shapes of composed objects do not match."""


class ValidationError(ComplexError):
    """An object failed one or more invariant checks.

    ``violations`` holds the itemized, human-readable reasons.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NotRationalHomologySphereError(ComplexError):
    """Homology does not have exactly one free tower."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed. This always indicates a bug."""


class ParseError(ValueError):
    """A document could not be read; ``location`` points at the culprit."""

    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
