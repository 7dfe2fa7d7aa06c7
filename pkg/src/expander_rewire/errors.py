"""Exception types shared across the package.

Plain ValueError is reserved for bad parameter values (usage errors); the
classes below mark conditions the CLI maps to its domain/capacity exit code.
"""


class DomainError(Exception):
    """Input is structurally unsuitable for the requested operation."""


class CapacityError(DomainError):
    """Input exceeds the size an exact desk-scale method can handle."""


class GenerationError(Exception):
    """Randomized construction exhausted its retry budget."""


class ParseError(DomainError):
    """Malformed edge-list or circuit file."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
