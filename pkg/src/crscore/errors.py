"""Exception hierarchy.

Every domain failure derives from :class:`CRScoreError` so callers (and the
CLI) can separate invalid inputs from I/O problems.
"""


class CRScoreError(ValueError):
    """Base class for domain errors raised by crscore."""


class NegativeMass(CRScoreError):
    pass


class NotNormalized(CRScoreError):
    pass


class DimensionMismatch(CRScoreError):
    pass


class IndexOutOfRange(CRScoreError, IndexError):
    pass


class GridMismatch(CRScoreError):
    pass


class CauseOutOfRange(CRScoreError):
    pass


class EmptyDataset(CRScoreError):
    pass


class IndeterminateGap(CRScoreError):
    """Both expected scores are infinite, so their difference is undefined."""


class FormatError(Exception):
    """A file could not be parsed (bad syntax, missing or unknown fields).

    Deliberately not a :class:`CRScoreError`: the CLI maps it to the I/O exit
    status rather than the validation one.
    """
