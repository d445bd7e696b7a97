"""Exception types raised across the package.

The CLI maps these onto exit codes: input errors exit 2, budget errors exit 3.
"""


class HFoldError(Exception):
    """Base class for all package errors."""


class InputError(HFoldError, ValueError):
    """The caller supplied an argument outside an operation's domain."""


class FewerThanTwoDistinct(InputError):
    pass


class KTooSmall(InputError):
    pass


class NTooSmall(InputError):
    pass


class NotCoprime(InputError):
    pass


class EmptySet(InputError):
    pass


class AnchorNotMember(InputError):
    pass


class RangeError(InputError):
    """An argument lies outside the window an operation is defined on."""


class BudgetError(HFoldError):
    """A computation would exceed a configured size limit."""


class OverflowBudgetExceeded(BudgetError, OverflowError):
    pass


class BudgetExceeded(BudgetError):
    """Raised by the brute-force oracle for oversized instances."""


class WitnessFailure(HFoldError, ArithmeticError):
    """A constructed witness violated one of the constraints it must satisfy."""
