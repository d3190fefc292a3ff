"""Exception hierarchy shared by the simulator modules."""


class MagnomechError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(MagnomechError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SingularityError(MagnomechError, ZeroDivisionError):
    pass


class ConfigurationError(MagnomechError, ValueError):
    pass


class StabilityError(MagnomechError):
    """The drift matrix has an eigenvalue with non-negative real part."""


class NumericError(MagnomechError, ArithmeticError):
    pass


class SearchError(MagnomechError):
    pass


class ParseError(ConfigurationError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
