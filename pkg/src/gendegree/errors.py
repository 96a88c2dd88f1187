"""Exception types shared across the package."""


class GenDegreeError(Exception):
    """Base class for every error raised by this package."""


class MalformedInputError(GenDegreeError, ValueError):
    """An edge list could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidSizeError(GenDegreeError, ValueError):
    pass


class LoopError(GenDegreeError, ValueError):
    """An operation would create a self-loop."""


class EdgeStateError(GenDegreeError, ValueError):
    """An edge was expected to be present (or absent) and was not."""


class SizeLimitError(GenDegreeError, ValueError):
    pass


class ParameterError(GenDegreeError, ValueError):
    pass


class NumericError(GenDegreeError, ArithmeticError):
    """A solve produced non-finite values or missed its residual target."""

    def __init__(self, message, residual=None):
        self.residual = residual
        if residual is not None:
            message = f"{message} (residual {residual:.3e})"
        super().__init__(message)


class UndefinedError(GenDegreeError, ValueError):
    """The requested quantity is undefined for this input."""
