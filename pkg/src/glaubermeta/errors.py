"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, CapacityError -> 3,
NumericError -> 4.
"""


class GlauberMetaError(Exception):
    """Base class for package errors."""


class ConfigError(GlauberMetaError):
    """Invalid user input: bad parameters, malformed files, impossible specs."""


class CapacityError(GlauberMetaError):
    """Problem size exceeds an explicit capacity cap."""


class NumericError(GlauberMetaError):
    """A numeric procedure failed to converge or produced a degenerate result."""


class StructuralError(GlauberMetaError):
    """An internal consistency check failed; flagged for review rather than silently ignored."""
