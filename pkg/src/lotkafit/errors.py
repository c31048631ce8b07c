"""Exception types shared across the package.

Two families matter to callers: bad input (malformed files, out-of-range
parameter values) and fits that cannot proceed on otherwise valid data.
The CLI maps them to exit codes 2 and 3 respectively.
"""


class LotkafitError(ValueError):
    """Base class for all package errors."""


class InputError(LotkafitError):
    """Malformed input file or out-of-range parameter value."""


class DegenerateFitError(LotkafitError):
    """Fit cannot proceed: too few points or degenerate geometry."""
