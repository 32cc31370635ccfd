"""Exception types shared across the package.

The CLI maps these onto its exit codes, so each failure mode gets its own class.
"""


class CuboidSymError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CuboidSymError, ZeroDivisionError):
    """Arithmetic outside the domain of an operation (e.g. inverting zero)."""


class UsageError(CuboidSymError, ValueError):
    """An operation was called with incompatible arguments."""


class ParseError(CuboidSymError, ValueError):
    def __init__(self, message, text="", line=1, column=1):
        self.message = message
        self.text = text
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}")


class UnknownIdentifierError(ParseError):
    pass


class GradingError(CuboidSymError, ValueError):
    """A polynomial is not homogeneous in the rows of its variable matrix."""

    def __init__(self, message, offending=()):
        self.offending = tuple(offending)
        super().__init__(message)


class MultiIndexError(CuboidSymError, ValueError):
    pass


class SymmetryError(CuboidSymError, ValueError):
    """Input is not invariant under column permutations; ``witness`` breaks it."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class BudgetExceeded(CuboidSymError, RuntimeError):
    """Buchberger's algorithm ran out of its pair-reduction budget."""

    def __init__(self, message, stats=None):
        self.stats = dict(stats or {})
        super().__init__(message)


class PipelineError(CuboidSymError, RuntimeError):
    """A derivation step failed its own consistency check."""

    def __init__(self, message, step=None):
        self.step = step
        super().__init__(message)
