"""Exception hierarchy shared by all modules."""


class TreeHardyError(Exception):
    """Base class for every error raised by the library."""


class InvalidParameterError(TreeHardyError, ValueError):
    pass


class DomainError(TreeHardyError, ValueError):
    """An operation restricted to the square-summable ideal got a nonzero tail."""


class NotInvertibleError(TreeHardyError, ArithmeticError):
    pass


class NotPositiveError(TreeHardyError, ArithmeticError):
    pass


class DivergenceError(TreeHardyError, ArithmeticError):
    """A point outside the disk was passed where a convergent series is required."""


class ValidityRegionError(TreeHardyError, ValueError):
    """The requested check needs nodes the truncated tree does not have."""


class NotStationaryCausalError(TreeHardyError, ValueError):
    pass


class RecursionBreakdownError(TreeHardyError, ArithmeticError):
    """An interpolation multiplier k_j failed the invertibility gate."""

    def __init__(self, message, index=None, value=None):
        super().__init__(message)
        self.index = index
        self.value = value


class OutsideDiskWarning(UserWarning):
    """Point evaluation requested at a point with spectral radius >= 1."""
