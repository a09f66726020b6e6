"""Exception hierarchy shared across the toolkit.

Exit-code mapping used by the CLI: ValidationError -> 2, NumericError -> 3.
"""


class FiresatError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(FiresatError):
    """Invalid input data, configuration, or arguments."""


class UnservableLocationError(ValidationError):
    """The satellite is below the horizon for the requested location."""


class NumericError(FiresatError):
    """A numerical routine failed to converge or produced invalid output."""
