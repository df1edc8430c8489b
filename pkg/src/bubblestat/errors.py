"""Exception hierarchy shared by all pipeline stages."""


class BubbleStatError(Exception):
    """Base class for every error raised by this package."""


class ParseError(BubbleStatError, ValueError):
    """Malformed input text. ``line`` is the 1-based line number, if known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(BubbleStatError, ValueError):
    pass


class InsufficientDataError(BubbleStatError, ValueError):
    pass


class DegenerateSeriesError(BubbleStatError, ValueError):
    """Zero variance, so scale-dependent quantities are undefined."""


class DegenerateWindowError(BubbleStatError, ArithmeticError):
    """A window has no strictly positive or no non-positive return."""


class WindowBoundsError(BubbleStatError, IndexError):
    pass


class ConfigError(BubbleStatError, ValueError):
    pass


class EstimationError(BubbleStatError, RuntimeError):
    pass


class ConsistencyError(BubbleStatError, RuntimeError):
    """Inputs that should share an index do not."""
