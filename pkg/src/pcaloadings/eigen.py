"""Symmetric eigenproblem for correlation matrices.

The solver is the cyclic Jacobi method: sweep over every off-diagonal pair
``(p, q)`` in row order, annihilating each with a plane rotation, until the
off-diagonal Frobenius norm drops below ``1e-12 * ||A||_F``. Rotations are
accumulated into the eigenvector matrix, so the columns come out orthonormal
to working precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .correlation import check_correlation_matrix
from .errors import ConvergenceError, NegativeEigenvalueError, ShapeError
from .matrix import DiagonalMatrix, as_matrix

MAX_SWEEPS = 100
OFF_DIAGONAL_RTOL = 1e-12
NEGATIVE_CLAMP_TOL = 1e-10
DEGENERACY_TOL = 1e-8
SIGN_TIE_TOL = 1e-12


def _off_norm(a: np.ndarray) -> float:
    # summed directly; subtracting the diagonal from the total cancels badly
    upper = a[np.triu_indices_from(a, k=1)]
    return math.sqrt(2.0 * float(np.dot(upper, upper)))


def jacobi_eigh(a, max_sweeps: int = MAX_SWEEPS, rtol: float = OFF_DIAGONAL_RTOL):
    """Eigenvalues and eigenvectors of a real symmetric matrix.

    Args:
        a: symmetric ``m x m`` matrix.
        max_sweeps: cap on full passes over the off-diagonal pairs.
        rtol: stop once ``||offdiag(A)||_F < rtol * ||A||_F``.

    Returns:
        ``(values, vectors, sweeps)``. Values are in the order the rotations
        leave them on the diagonal (unsorted); ``vectors[:, j]`` pairs with
        ``values[j]``.

    Raises:
        ConvergenceError: if the cap is reached first.
    """
    a = np.array(as_matrix(a), dtype=np.float64)
    m = a.shape[0]
    if a.shape != (m, m):
        raise ShapeError(f"matrix must be square, got {a.shape}")
    a = (a + a.T) / 2
    v = np.eye(m)
    target = rtol * math.sqrt(float(np.sum(a * a)))

    for sweep in range(max_sweeps + 1):
        if _off_norm(a) <= target:
            return np.diag(a).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :]
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    raise ConvergenceError(
        f"Jacobi iteration did not converge in {max_sweeps} sweeps "
        f"(off-diagonal norm {_off_norm(a):.3g}, target {target:.3g})"
    )


def orient_columns(u: np.ndarray, tie_tol: float = SIGN_TIE_TOL) -> np.ndarray:
    """Flip columns so each one's largest-magnitude entry is positive.

    Entries within ``tie_tol`` of the largest magnitude count as tied; the
    lowest row index among them decides.
    """
    u = np.array(u, dtype=np.float64)
    for j in range(u.shape[1]):
        col = np.abs(u[:, j])
        lead = int(np.flatnonzero(col >= col.max() - tie_tol)[0])
        if u[lead, j] < 0:
            u[:, j] = -u[:, j]
    return u


@dataclass(frozen=True)
class EigenDecomposition:
    """Sorted eigen-structure of a correlation matrix.

    Attributes:
        eigenvalues: non-increasing, clamped at zero; the variances of the
            principal components.
        u: unit eigenvectors in columns, ``u[:, j]`` pairs with
            ``eigenvalues[j]``.
        s: standard-deviation matrix, ``sqrt`` of the eigenvalues.
        sweeps: Jacobi sweeps used.
    """

    eigenvalues: np.ndarray
    u: np.ndarray
    s: DiagonalMatrix = field(init=False)
    sweeps: int = 0

    def __post_init__(self):
        lam = np.array(self.eigenvalues, dtype=np.float64)
        u = np.array(self.u, dtype=np.float64)
        if u.shape != (lam.size, lam.size):
            raise ShapeError(f"eigenvector matrix shape {u.shape} does not match {lam.size} eigenvalues")
        lam.flags.writeable = False
        u.flags.writeable = False
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "s", DiagonalMatrix(np.sqrt(lam)))

    @property
    def m(self) -> int:
        return self.eigenvalues.size

    @property
    def lam(self) -> DiagonalMatrix:
        return DiagonalMatrix(self.eigenvalues)

    def degenerate_pairs(self, tol: float = DEGENERACY_TOL) -> list[tuple[int, int]]:
        """Adjacent index pairs whose eigenvalues coincide within ``tol``.

        Eigenvectors inside such a pair are only defined up to a rotation of
        their common subspace.
        """
        gaps = -np.diff(self.eigenvalues)
        return [(i, i + 1) for i in np.flatnonzero(gaps < tol).tolist()]

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.eigenvalues) @ self.u.T


def eigen_decompose(r) -> EigenDecomposition:
    """Solve the eigenproblem of a correlation matrix.

    Eigenvalues are sorted non-increasingly with a stable sort, carrying
    their eigenvectors along; each eigenvector is then oriented so its
    largest-magnitude entry is positive. Eigenvalues in ``[-1e-10, 0)`` are
    clamped to zero.

    Raises:
        NegativeEigenvalueError: for an eigenvalue below ``-1e-10``.
        ConvergenceError: if Jacobi iteration does not converge.
    """
    r = check_correlation_matrix(r)
    values, vectors, sweeps = jacobi_eigh(r)
    if values.min() < -NEGATIVE_CLAMP_TOL:
        raise NegativeEigenvalueError(
            f"eigenvalue {values.min()!r} is negative; input is not positive semidefinite"
        )
    values = np.maximum(values, 0.0)
    order = np.argsort(-values, kind="stable")
    return EigenDecomposition(values[order], orient_columns(vectors[:, order]), sweeps=sweeps)


def sqrt_eigenvalues(decomp: EigenDecomposition) -> DiagonalMatrix:
    return DiagonalMatrix(np.sqrt(decomp.eigenvalues))
