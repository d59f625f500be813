"""Exception hierarchy.

Two families matter to callers: :class:`DataError` for problems with the
input data and :class:`NumericalError` for problems that surface while
computing. The CLI maps them to distinct exit codes.
"""


class PcaLoadingsError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(PcaLoadingsError, ValueError):
    """Operands have incompatible dimensions."""


class DataError(PcaLoadingsError, ValueError):
    """Input data is unusable (non-finite, malformed, degenerate)."""


class ZeroVarianceError(DataError):
    """A sample or column has zero variance and cannot be standardized."""

    def __init__(self, message, column=None, name=None):
        super().__init__(message)
        self.column = column
        self.name = name


class CSVFormatError(DataError):
    """A CSV file could not be parsed into a numeric table."""

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class NonNumericCellError(CSVFormatError):
    """A data cell does not hold a finite decimal number."""


class ModelFormatError(DataError):
    """A loadings artifact could not be read back as a factor model."""


class NumericalError(PcaLoadingsError, ArithmeticError):
    """A computation produced a result outside its valid domain."""


class ConvergenceError(NumericalError):
    """An iterative solver hit its iteration cap."""


class NegativeEigenvalueError(NumericalError):
    """A correlation matrix produced an eigenvalue below the clamp tolerance."""


class OutOfRangeError(NumericalError):
    """A correlation-like entry lies outside [-1, 1] beyond tolerance."""
