"""Exception types raised across the package."""


class FactorIdError(Exception):
    """Base class for all factorid errors."""


class ParseError(FactorIdError):
    """Input text is not a valid pattern (bad character, bad JSON, ...)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" at line {line}"
            if column is not None:
                where += f", column {column}"
        super().__init__(message + where)
        self.line = line
        self.column = column


class DimensionError(FactorIdError):
    """Rows have inconsistent lengths, or declared dimensions do not match."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)
        self.line = line


class EmptyInputError(FactorIdError):
    """Input contains no pattern cells at all."""


class NotSquareError(FactorIdError):
    """A square pattern was required but row and column counts differ."""


class MatchingNotMaximumError(FactorIdError):
    """The supplied matching admits an augmenting path."""


class UntrimmedPatternError(FactorIdError):
    """The operation requires a pattern without all-zero rows or columns."""


class EmptyPatternError(FactorIdError):
    """The operation requires at least one column."""


class SentinelCutError(FactorIdError):
    """A reported cut contains an arc with the infinite-capacity sentinel."""


class TooManyColumnsError(FactorIdError):
    """Brute-force subset enumeration refused above the column cap."""


class InfeasibleDimensionsError(FactorIdError):
    """The rule cannot hold because the pattern has fewer than 2r+s rows."""


class DeletionBudgetExceededError(FactorIdError):
    """Row-deletion enumeration refused above the configured budget."""


class NoDecompositionError(FactorIdError):
    """No pair of disjoint row groups with reordered nonzero diagonals exists."""
