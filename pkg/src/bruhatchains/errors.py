"""Exception types shared across the package."""


class BruhatError(Exception):
    """Base class for all domain errors raised by this package."""


class PatternMismatch(BruhatError):
    """The addressed 2x2 submatrix does not match the interchange pattern."""


class MarginMismatch(BruhatError):
    """Two matrices do not share dimensions and row/column sums."""


class NotInClass(BruhatError):
    """A matrix does not belong to the class required by the operation."""


class InfeasibleMargins(BruhatError):
    """No (0,1)-matrix realizes the requested row/column sums."""


class ClassTooLarge(BruhatError):
    """The class exceeds the configured member cap."""


class SearchBudgetExceeded(BruhatError):
    """A reachability search hit its node limit before resolving."""


class UnsupportedOrder(BruhatError):
    """The matrix order n is outside the operation's domain."""


class SizeMismatch(BruhatError):
    """Index selections do not match the dimensions of the submatrix."""


class IndexOutOfRange(BruhatError):
    """Row or column indices fall outside the host matrix."""


class MalformedChain(BruhatError):
    """Chain data cannot be interpreted (bad step tuples, bad matrices)."""
