"""Statistics of a single random variable.

All estimators default to the loaded convention (divisor ``n``). The
unloaded estimator (divisor ``n - 1``) is available for comparison only;
the matrix identities used elsewhere in the package hold exactly under the
``1/n`` convention and nowhere else.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, ZeroVarianceError


class Convention(str, enum.Enum):
    """Variance divisor convention."""

    LOADED = "loaded_n"
    UNLOADED = "unloaded_n_minus_1"

    def divisor(self, n: int) -> int:
        return n if self is Convention.LOADED else n - 1


def as_sample(values, name: str = "sample") -> np.ndarray:
    """Validate a 1-D sample of at least two finite observations."""
    x = np.array(values, dtype=np.float64)
    if x.ndim != 1:
        raise DataError(f"{name} must be 1-D, got shape {x.shape}")
    if x.size < 2:
        raise DataError(f"{name} needs at least 2 observations, got {x.size}")
    if not np.isfinite(x).all():
        raise DataError(f"{name} contains NaN or infinite values")
    x.flags.writeable = False
    return x


def _mean(x: np.ndarray, axis=None):
    # numpy reductions use pairwise summation, which keeps the centering
    # residual near 1e-16 * n**0.5 rather than 1e-16 * n.
    return np.sum(x, axis=axis) / x.shape[0 if axis is None else axis]


def _center(x: np.ndarray, axis=0) -> np.ndarray:
    c = x - _mean(x, axis=axis)
    # second pass removes the rounding left by the first subtraction
    return c - _mean(c, axis=axis)


def _degenerate(s, scale) -> bool:
    # a spread at the rounding level of the data's magnitude is a constant
    return s <= 64 * np.finfo(np.float64).eps * scale


def mean(sample) -> float:
    return float(_mean(as_sample(sample)))


def center(sample) -> np.ndarray:
    """Random component of a sample: the sample minus its mean."""
    c = _center(as_sample(sample))
    c.flags.writeable = False
    return c


def variance(sample, convention: Convention = Convention.LOADED) -> float:
    x = center(sample)
    return float(np.dot(x, x) / Convention(convention).divisor(x.size))


def std(sample, convention: Convention = Convention.LOADED) -> float:
    return math.sqrt(variance(sample, convention))


def standardize(sample) -> np.ndarray:
    """Rescale to zero mean and unit loaded variance.

    Raises:
        ZeroVarianceError: for a constant sample.
    """
    raw = as_sample(sample)
    x = center(raw)
    s = math.sqrt(np.dot(x, x) / x.size)
    if _degenerate(s, np.max(np.abs(raw))):
        raise ZeroVarianceError("cannot standardize a constant sample")
    z = x / s
    z.flags.writeable = False
    return z


def linear_transform(sample, a: float, b: float) -> np.ndarray:
    """Affine map ``a + b*X`` applied elementwise."""
    y = a + b * as_sample(sample)
    y.flags.writeable = False
    return y


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    variance: float
    std: float
    divisor_convention: Convention


def summarize(sample, convention: Convention = Convention.LOADED) -> SummaryStats:
    x = as_sample(sample)
    v = variance(x, convention)
    return SummaryStats(mean(x), v, math.sqrt(v), Convention(convention))
