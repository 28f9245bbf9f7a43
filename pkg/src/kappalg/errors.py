"""Exception types shared across the package."""


class KappalgError(Exception):
    """Base class for all package-specific errors."""


class PresentationError(KappalgError):
    """Malformed or non-Jacobi Lie presentation, or mixed-presentation operands."""


class LegMismatchError(KappalgError):
    """Tensor operands with incompatible leg counts or positions."""


class TruncationError(KappalgError):
    """A series coefficient beyond the known truncation order was requested."""


class SeriesDomainError(KappalgError):
    """Leading coefficient unsuitable for exp/log/sqrt/inverse."""


class CancellationError(KappalgError):
    """Expected low-order cancellation of a kappa-scaled series failed."""


class ParseError(KappalgError):
    """Lexical or syntax error; carries line/column information."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "line %d, column %d: %s" % (line, column, message)
        super().__init__(message)
