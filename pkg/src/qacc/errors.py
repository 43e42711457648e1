"""Exception types raised across the package.

Every error subclasses :class:`ValueError` so callers that only care about
"bad input" can catch one thing. The class name doubles as the invariant
label printed by the command-line front end.
"""


class QaccError(ValueError):
    """Base class for all package errors."""


class NotHermitian(QaccError):
    pass


class NotPositive(QaccError):
    pass


class TraceNotOne(QaccError):
    pass


class DomainError(QaccError):
    pass


class DimensionMismatch(QaccError):
    pass


class NotCommuting(QaccError):
    pass


class DegenerateInput(QaccError):
    pass


class FidelityNotPreserved(QaccError):
    """The fidelity-preserving construction failed its own post-check."""
