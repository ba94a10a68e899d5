"""Exception hierarchy shared by every mgeom module."""


class MGeomError(Exception):
    """Base class for all library errors."""


class DomainError(MGeomError, ValueError):
    """An argument lies outside the domain of a multiplicative operation."""


class MultiplicativeZeroDivisionError(DomainError, ZeroDivisionError):
    """Division by the multiplicative zero 0* = 1."""


class NumericalDomainError(DomainError):
    """A numerical routine met a non-finite value."""


class NonDifferentiableError(DomainError):
    """Differentiation was requested at a kink (e.g. mabs at 0*)."""


class DimensionError(MGeomError, ValueError):
    """Vectors of incompatible dimension were combined."""


class AccuracyError(MGeomError):
    """A numerical method failed to reach its tolerance.

    ``estimate`` carries the best value achieved.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class ParseError(MGeomError, ValueError):
    """Syntax error in an expression or literal.

    Attributes
    ----------
    offset : int
        Byte offset of the offending token in the UTF-8 encoded input.
    expected : frozenset of str
        Token kinds that would have been accepted at ``offset``.
    """

    def __init__(self, message, offset=0, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class UnknownIdentifierError(ParseError):
    """An identifier that is neither a function nor the variable."""


class SingularCurveError(MGeomError):
    """The curve is not regular (zero multiplicative speed) at ``location``."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class FrameUndefinedError(SingularCurveError):
    """kappa = 0*: the principal normal is undefined at ``location``."""


class NotNaturalError(MGeomError):
    """An operation needs a naturally parametrized curve; reparametrize first."""


class CorrespondenceError(MGeomError):
    """Two curves are not in parameter correspondence."""


class InadmissibleCurveError(MGeomError):
    """The curve does not admit the requested partner construction."""
