"""Exception hierarchy shared by every module."""


class AlgebraError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DimensionError(AlgebraError, ValueError):
    pass


class UndefinedLeadingTermError(AlgebraError, ValueError):
    pass


class InvalidDivisorError(AlgebraError, ValueError):
    pass


class UnsupportedRingError(AlgebraError, ValueError):
    pass


class UnsupportedDimensionError(AlgebraError, ValueError):
    pass


class InvalidPairError(AlgebraError, ValueError):
    pass


class InvalidConfigError(AlgebraError, ValueError):
    pass


class InvariantViolation(AlgebraError, RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class ParseError(Exception):
    """Syntax or declaration error in a CLI program (exit code 2)."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)
