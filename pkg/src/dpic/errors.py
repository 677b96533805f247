"""Exception hierarchy shared across the package."""


class DpicError(Exception):
    """Base class for all errors raised by this package."""


class InputError(DpicError):
    """Malformed or inconsistent user input (unknown vertex, bad range, ...)."""


class UnsupportedQuiverError(DpicError):
    """The quiver is outside the supported class (oriented cycles, disconnected, ...)."""


class InsufficientWindowError(DpicError):
    """The translation-quiver window is too narrow for the requested computation."""


class InsufficientRadiusError(DpicError):
    """The slice-search radius cannot accommodate a connected slice image."""


class ConsistencyError(DpicError):
    """An internal cross-check failed; indicates a bug, not a math failure."""


class DslSyntaxError(InputError):
    """Parse error in the quiver DSL, with source position."""

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
