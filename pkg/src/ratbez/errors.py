"""Exception hierarchy shared by the library and the command line driver."""


class RatBezError(Exception):
    """Base class for all errors raised by :mod:`ratbez`."""


class ValidationError(RatBezError, ValueError):
    """Invalid arguments: indices out of range, bad constraint orders, ..."""


class NumericalError(RatBezError, ArithmeticError):
    """A computation produced a non-finite or otherwise unusable value."""


class ConvergenceError(NumericalError):
    """Adaptive Chebyshev interpolation did not meet its tolerance.

    The best series found before giving up is kept in :attr:`best` so
    callers can decide whether a degraded result is acceptable.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
