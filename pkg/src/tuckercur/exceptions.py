"""Exception types raised by tuckercur."""


class TuckerCurError(Exception):
    """Base class for all errors raised by this package."""


class InvalidModeError(TuckerCurError, ValueError):
    pass


class ShapeError(TuckerCurError, ValueError):
    pass


class RankError(TuckerCurError, ValueError):
    pass


class NumericInputError(TuckerCurError, ValueError):
    pass


class RankDeficiencyError(TuckerCurError, ArithmeticError):
    """Raised when a pivoted-QR selection yields a numerically singular R11.

    ``step`` is the 0-based elimination step at which the pivot collapsed and
    ``mode`` (when known) the tensor mode whose unfolding was being processed.
    """

    def __init__(self, message, step=None, mode=None):
        super().__init__(message)
        self.step = step
        self.mode = mode
