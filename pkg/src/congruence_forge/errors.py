"""Exception hierarchy shared by all modules."""


class ForgeError(ValueError):
    """Base class; the CLI maps every subclass to exit status 2."""


class ParameterError(ForgeError):
    """A parameter is outside its allowed range (non-prime p, b = 0, ...)."""


class DomainError(ForgeError):
    """The operation is undefined for these inputs (p-divisible denominators, poles)."""


class UnsupportedStatementError(ForgeError):
    """The congruence makes no claim for these parameters."""


class SeriesRangeError(ForgeError, IndexError):
    """A coefficient was requested beyond the truncation order."""
