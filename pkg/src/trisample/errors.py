"""Exception hierarchy shared across the package.

``UsageError`` subclasses mark problems attributable to user input (bad
files, bad schemas, impossible requests); the CLI maps them to exit code 2
and everything else to exit code 1.
"""


class Error(Exception):
    """Base class for all trisample errors."""


class UsageError(Error):
    """A problem caused by user-supplied input rather than a runtime fault."""


class SchemaError(UsageError):
    """Missing or malformed columns, or an invalid weight schema."""


class ParseError(UsageError):
    """A cell that cannot be parsed; the message names the row and column."""


class UnsupportedTargetError(UsageError):
    """Label column does not contain exactly two distinct values."""


class UnknownCategoryError(UsageError):
    """A minority sample carries a category missing from the weight schema."""


class DegenerateWeightsError(UsageError):
    """All raw sample weights are zero; normalization is impossible."""


class NothingToGenerateError(UsageError):
    """The dataset is already balanced; no samples to generate."""


class DegeneratePairError(Error):
    """A seed/neighbor pair whose weights are both zero."""


class UndefinedMetricError(Error):
    """A confusion-matrix metric is undefined because a class is absent."""


class IncompleteSweepError(Error):
    """A sweep report lacks the full alpha grid for some group."""
