"""Exception hierarchy shared by every floerlink module."""


class FloerLinkError(Exception):
    """Base class for all errors raised by floerlink."""


class DimensionMismatch(FloerLinkError, ValueError):
    pass


class NotDivisible(FloerLinkError, ArithmeticError):
    """Exact division left a nonzero remainder."""


class NotSymmetric(FloerLinkError, ValueError):
    pass


class SymmetryViolation(FloerLinkError, ValueError):
    """An extracted h' table (or stored polynomial) breaks s -> -s symmetry."""


class NotLSpaceStaircase(FloerLinkError, ValueError):
    pass


class EmptySublink(FloerLinkError, ValueError):
    pass


class MissingSublink(FloerLinkError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ValidationFailed(FloerLinkError, ValueError):
    """A built model violates the H-function axioms; carries the violations."""

    def __init__(self, message, violations=(), cause=None):
        super().__init__(message)
        self.violations = list(violations)
        self.cause = cause


class NotAlgebraicallySplit(FloerLinkError, ValueError):
    pass


class ParseError(FloerLinkError, ValueError):
    pass


class WrongArity(FloerLinkError, ValueError):
    pass


class HypothesisMissing(FloerLinkError, ValueError):
    pass


class NotPerfectSquare(FloerLinkError, ValueError):
    pass


class NotLarge(FloerLinkError, ValueError):
    pass


class IndexOutOfRange(FloerLinkError, ValueError):
    pass


class UnknownLink(FloerLinkError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
