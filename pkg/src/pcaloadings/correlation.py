"""Second-order statistics for a set of random variables.

A :class:`DataMatrix` holds ``n`` observations of ``m`` variables, one
variable per column. Covariances always use the ``1/n`` divisor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, OutOfRangeError, ShapeError, ZeroVarianceError
from .matrix import DiagonalMatrix, as_matrix, diag_power, hadamard_square
from .stats import _center, _degenerate, _mean, as_sample

# clamp window for correlation entries that round past +/-1
CLAMP_TOL = 1e-12
# entries of a matrix handed to determination_matrix may overshoot this much
DETERMINATION_TOL = 1e-9


@dataclass(frozen=True)
class DataMatrix:
    """Observations in rows, variables in columns.

    Attributes:
        values: ``n x m`` frozen float array, ``n >= 2``.
        standardized: whether every column has zero mean and unit loaded
            variance. Checked on construction when true.
    """

    values: np.ndarray
    standardized: bool = False

    def __post_init__(self):
        v = as_matrix(self.values, "data matrix")
        if v.shape[0] < 2:
            raise DataError(f"need at least 2 observations, got {v.shape[0]}")
        object.__setattr__(self, "values", v)
        if self.standardized:
            means = _mean(v, axis=0)
            variances = _mean(v * v, axis=0)
            if np.max(np.abs(means)) > 1e-10 or np.max(np.abs(variances - 1)) > 1e-8:
                raise DataError("matrix flagged standardized has columns that are not")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]


def as_data_matrix(x) -> DataMatrix:
    return x if isinstance(x, DataMatrix) else DataMatrix(x)


def covariance_matrix(x) -> np.ndarray:
    """Loaded covariance matrix ``C = X^T X / n`` of the centered columns."""
    x = as_data_matrix(x)
    xc = x.values if x.standardized else _center(x.values)
    c = xc.T @ xc / x.n
    c = (c + c.T) / 2
    c.flags.writeable = False
    return c


def standardize_columns(x) -> DataMatrix:
    """Center every column and divide it by its loaded standard deviation.

    Raises:
        ZeroVarianceError: naming the first constant column.
    """
    x = as_data_matrix(x)
    if x.standardized:
        return x
    xc = _center(x.values)
    variances = _mean(xc * xc, axis=0)
    scale = np.max(np.abs(x.values), axis=0)
    for j, v in enumerate(variances):
        if _degenerate(np.sqrt(v), scale[j]):
            raise ZeroVarianceError(f"column {j} has zero variance", column=j)
    inv_sd = diag_power(DiagonalMatrix(variances), -0.5)
    # right-multiplying by a diagonal matrix scales columns
    return DataMatrix(xc * inv_sd.diagonal, standardized=True)


def pearson(x, y) -> float:
    """Correlation coefficient as the cosine between two random components."""
    x = as_sample(x, "x")
    y = as_sample(y, "y")
    if x.size != y.size:
        raise ShapeError(f"samples differ in length: {x.size} vs {y.size}")
    xc = _center(x)
    yc = _center(y)
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    if _degenerate(math.sqrt(sxx), np.max(np.abs(x))) or _degenerate(math.sqrt(syy), np.max(np.abs(y))):
        raise ZeroVarianceError("pearson correlation undefined for a constant sample")
    r = float(np.dot(xc, yc)) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def _clamp_unit(r: np.ndarray, tol: float) -> np.ndarray:
    over = np.max(np.abs(r)) - 1.0
    if over > tol:
        raise OutOfRangeError(f"entry exceeds unit modulus by {over:.3g}")
    return np.clip(r, -1.0, 1.0)


def correlation_matrix(x) -> np.ndarray:
    """Pearson correlation matrix ``R = X^T X / n`` of the standardized data.

    Raw data is centered and standardized first, so the result is the same
    whichever form is passed in.
    """
    z = standardize_columns(x)
    r = z.values.T @ z.values / z.n
    r = _clamp_unit((r + r.T) / 2, CLAMP_TOL)
    r.flags.writeable = False
    return r


def check_correlation_matrix(r, atol: float = 1e-10) -> np.ndarray:
    """Validate the invariants of a correlation matrix and return it frozen."""
    r = as_matrix(r, "correlation matrix")
    if r.shape[0] != r.shape[1]:
        raise ShapeError(f"correlation matrix must be square, got {r.shape}")
    if np.max(np.abs(r - r.T)) > 1e-12:
        raise DataError("correlation matrix is not symmetric")
    if np.max(np.abs(np.diag(r) - 1.0)) > atol:
        raise DataError("correlation matrix must have a unit diagonal")
    _clamp_unit(r, CLAMP_TOL)
    return r


def determination_matrix(r) -> np.ndarray:
    """Coefficients of determination: the Hadamard square of ``r``.

    Works for any correlation-like matrix, square or not, including loadings.
    """
    r = as_matrix(r)
    return hadamard_square(_clamp_unit(r, DETERMINATION_TOL))
