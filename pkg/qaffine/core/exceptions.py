# qaffine/core/exceptions.py

"""
Exceptions Module for qaffine

This module defines the exception hierarchy shared by every layer of the
verification engine. Verification failures are report outcomes and are not
exceptions; the classes below signal that a computation could not be carried
out at all (bad input, an expansion that does not exist, an empty safe window).
"""

from typing import Optional


class QAffineError(Exception):
    """Base class of all qaffine errors."""


class NonExpandable(QAffineError):
    """The lowest-order denominator coefficient of an expansion vanishes."""


class SeriesNotInvertible(QAffineError):
    """The order-zero coefficient of a series is not invertible."""


class NotInvertible(QAffineError):
    """A matrix over the rational-expression field is singular."""


class EmptySafeWindow(QAffineError):
    """Truncation left no cell on which a result can be trusted."""


class NoSolution(QAffineError):
    """A parameter search found no admissible point."""


class UnknownCurrent(QAffineError):
    """A relation references a current that the bindings do not provide."""


class NonFactorableCoefficient(QAffineError):
    """A coefficient is not a product of admissible linear atoms."""


class RMatrixFormatError(QAffineError):
    """An R-matrix document is malformed."""


class ConfigurationError(QAffineError):
    """A configuration value is missing or has the wrong type."""


class DSLSyntaxError(QAffineError):
    """
    A relation-suite source could not be parsed.

    Attributes:
        message (str): What went wrong.
        line (int): 1-based line of the offending token.
        column (int): 1-based column of the offending token.
        source (Optional[str]): File name or other label of the source text.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0, source: Optional[str] = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")
