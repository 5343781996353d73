"""Exception hierarchy shared across the package.

Every error class that can surface through the command line interface
carries a distinct stable exit code (see ``cli.EXIT_CODES``).
"""

from __future__ import annotations


class BestSubsetError(Exception):
    """Base class for all errors raised by this package."""


class ZeroVarianceColumn(BestSubsetError):
    """A column involved in a correlation has (near-)zero standard deviation."""

    def __init__(self, column: int | str, sigma: float = 0.0):
        self.column = column
        self.sigma = sigma
        super().__init__(
            f"column {column!r} has zero (or numerically negligible) variance; "
            "Pearson correlation is undefined for it"
        )


class SingularMatrixError(BestSubsetError):
    """Gaussian elimination met a pivot below the collinearity threshold."""

    def __init__(self, pivot_index: int, pivot: float):
        self.pivot_index = pivot_index
        self.pivot = pivot
        super().__init__(
            f"matrix is numerically singular: pivot {pivot_index} is {pivot:.3e}"
        )


class InternalNumericError(BestSubsetError):
    """An internal consistency check failed (result far outside its valid range)."""


class InvalidSparsityError(BestSubsetError):
    """Requested subset size k is outside the valid range for the instance."""


class NoValidSubsetError(BestSubsetError):
    """Every candidate subset was numerically singular."""


class UnknownMethodError(BestSubsetError):
    """Requested selection method name is not recognised."""


class LimitExceededError(BestSubsetError):
    """The search would score more (subset, responder) pairs than allowed."""


class ParseError(BestSubsetError):
    """Malformed input data; row/column are 1-based when present."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        self.row = row
        self.column = column
        where = ""
        if row is not None and column is not None:
            where = f" (row {row}, column {column})"
        elif row is not None:
            where = f" (row {row})"
        super().__init__(message + where)


class ArityMismatchError(ParseError):
    """A data row has a different number of cells than the first row."""


class NonFiniteValueError(ParseError):
    """A data cell parsed to NaN or infinity."""


class VerificationFailure(BestSubsetError):
    """Cross-method verification found a disagreement."""
