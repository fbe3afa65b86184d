"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration problems exit 2, data
problems exit 3, numeric failures exit 4.
"""


class InvalidInputError(ValueError):
    """An operation received arrays with bad shapes, sizes or values."""


class ConfigError(ValueError):
    """A configuration object or file is inconsistent or incomplete."""


class DataFormatError(ValueError):
    """A data file could not be parsed; the message carries the location."""


class NumericFailureError(RuntimeError):
    """A numerical routine (e.g. the SVD) failed to converge."""


class DegenerateNodeError(ValueError):
    """A hidden node has a zero weight vector and no inflection hyperplane."""
