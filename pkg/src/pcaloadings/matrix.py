"""Dense real-matrix substrate.

Matrices are plain 2-D ``float64`` numpy arrays that have been validated
(finite entries, positive shape) and frozen. Every function here returns a
new read-only array, so results can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, NumericalError, ShapeError

DEFAULT_ATOL = 1e-10


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def as_matrix(data, name: str = "matrix") -> np.ndarray:
    """Validate ``data`` and return it as a frozen 2-D float array.

    Raises:
        ShapeError: if ``data`` is not 2-D or has an empty dimension.
        DataError: if any entry is NaN or infinite.
    """
    a = np.array(data, dtype=np.float64)
    if a.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got {a.ndim}-D")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeError(f"{name} must have positive shape, got {a.shape}")
    if not np.isfinite(a).all():
        raise DataError(f"{name} contains NaN or infinite entries")
    return _freeze(a)


def identity(order: int) -> np.ndarray:
    return _freeze(np.eye(order))


def hadamard(a, b) -> np.ndarray:
    """Elementwise (Schur) product of two same-shaped matrices."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape != b.shape:
        raise ShapeError(f"hadamard operands differ in shape: {a.shape} vs {b.shape}")
    return _freeze(a * b)


def hadamard_square(a) -> np.ndarray:
    return hadamard(a, a)


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return _freeze(a @ b)


def transpose(a) -> np.ndarray:
    return _freeze(np.ascontiguousarray(as_matrix(a).T))


@dataclass(frozen=True)
class DiagonalMatrix:
    """Square matrix stored by its diagonal only."""

    diagonal: np.ndarray

    def __post_init__(self):
        d = np.array(self.diagonal, dtype=np.float64).reshape(-1)
        if d.size < 1:
            raise ShapeError("diagonal matrix needs at least one entry")
        if not np.isfinite(d).all():
            raise DataError("diagonal contains NaN or infinite entries")
        object.__setattr__(self, "diagonal", _freeze(d))

    @property
    def order(self) -> int:
        return self.diagonal.size

    def dense(self) -> np.ndarray:
        return _freeze(np.diag(self.diagonal))

    def truncate(self, k: int) -> "DiagonalMatrix":
        """Leading ``k``x``k`` block."""
        if not 1 <= k <= self.order:
            raise ValueError(f"k must be in [1, {self.order}], got {k}")
        return DiagonalMatrix(self.diagonal[:k])


def diag_power(v: DiagonalMatrix, exponent: float) -> DiagonalMatrix:
    """Raise every diagonal entry to ``exponent``.

    Negative or fractional exponents need a strictly positive diagonal, which
    covers the usual uses: square roots of variance matrices and their
    inverses.
    """
    d = v.diagonal
    needs_positive = exponent < 0 or float(exponent) != int(exponent)
    if needs_positive and (d <= 0).any():
        raise NumericalError(
            f"exponent {exponent} requires a strictly positive diagonal, "
            f"got minimum {d.min()!r}"
        )
    return DiagonalMatrix(np.power(d, exponent))


def max_abs_diff(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeError(f"cannot compare {a.shape} with {b.shape}")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def allclose(a, b, atol: float = DEFAULT_ATOL) -> bool:
    """Elementwise comparison with an absolute tolerance only."""
    return max_abs_diff(a, b) <= atol
