"""Exception hierarchy shared by every module of the package."""


class IsoperError(Exception):
    """Base class for all package errors."""


class UnknownSymbol(IsoperError, KeyError):
    pass


class ParseError(IsoperError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)

    def __str__(self):
        return self.args[0]


class EmptyRelator(ParseError):
    pass


class BudgetExceeded(IsoperError):
    """A configured search or enumeration cap was hit.

    ``partial`` carries whatever diagnostics the caller managed to collect
    before giving up (frontier sizes, proven lower bounds, ...).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial or {}


class NotNullhomotopic(IsoperError):
    pass


class IndexOutOfRange(IsoperError, IndexError):
    pass


class UncertifiedSample(IsoperError):
    pass


class DegreeZero(IsoperError, ValueError):
    pass


class InsufficientBall(IsoperError):
    pass


class NotAComplex(IsoperError):
    pass


class UnknownName(IsoperError, KeyError):
    pass


class ContractionUnavailable(IsoperError):
    pass


class IdentityViolation(IsoperError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MissingContraction(IsoperError):
    pass
