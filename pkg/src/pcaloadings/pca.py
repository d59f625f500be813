"""Principal component analysis on standardized data.

The components are ``P = X U`` for the eigenvector matrix ``U`` of the
correlation matrix. The correlation between variable ``i`` and component
``j`` has the closed form ``(U S)[i, j]`` with ``S = sqrt(Lambda)``, which
makes the variable/component correlation matrix the same object as the
factor loadings matrix. :func:`direct_component_correlations` computes the
same matrix from the data, so callers can check the identity on their own
inputs.

Loadings are sign-ambiguous per component; they follow the orientation
chosen for the eigenvectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlation import DataMatrix, determination_matrix
from .eigen import EigenDecomposition
from .errors import DataError, ShapeError, ZeroVarianceError

DEFAULT_THRESHOLD = 0.8


@dataclass(frozen=True)
class PrincipalComponents:
    """Component scores ``P`` (``n x k``) and the variance of each column."""

    p: np.ndarray
    component_variances: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=np.float64)
        lam = np.array(self.component_variances, dtype=np.float64).reshape(-1)
        if p.ndim != 2 or p.shape[1] != lam.size:
            raise ShapeError(f"{lam.size} variances for a score matrix of shape {p.shape}")
        p.flags.writeable = False
        lam.flags.writeable = False
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "component_variances", lam)

    @property
    def k(self) -> int:
        return self.p.shape[1]


def _require_standardized(x) -> DataMatrix:
    if isinstance(x, DataMatrix):
        if not x.standardized:
            raise DataError("principal components need standardized data")
        return x
    return DataMatrix(x, standardized=True)


def _project(x: np.ndarray, u: np.ndarray) -> np.ndarray:
    # one matrix-vector product per column, so a column of the result does
    # not depend on how many other columns are requested
    out = np.empty((x.shape[0], u.shape[1]))
    for j in range(u.shape[1]):
        out[:, j] = x @ u[:, j]
    return out


def principal_components(x, u, variances=None) -> PrincipalComponents:
    """Project standardized data onto the columns of ``u``.

    Args:
        x: standardized ``n x m`` data.
        u: ``m x k`` matrix with orthonormal columns.
        variances: variances of the resulting components, normally the
            matching eigenvalues. Measured from the scores when omitted.

    Raises:
        DataError: if ``x`` is not standardized.
        ShapeError: if ``u`` does not conform or its columns are not
            orthonormal.
    """
    x = _require_standardized(x)
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 2 or u.shape[0] != x.m or not 1 <= u.shape[1] <= x.m:
        raise ShapeError(f"rotation of shape {u.shape} does not fit {x.m} variables")
    if np.max(np.abs(u.T @ u - np.eye(u.shape[1]))) > 1e-8:
        raise ShapeError("rotation columns are not orthonormal")
    p = _project(x.values, u)
    if variances is None:
        variances = np.einsum("ij,ij->j", p, p) / x.n
    return PrincipalComponents(p, variances)


def _check_k(k: int, upper: int) -> int:
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= upper:
        raise ValueError(f"k must be an integer in [1, {upper}], got {k!r}")
    return int(k)


def full_components(x, decomp: EigenDecomposition) -> PrincipalComponents:
    return principal_components(x, decomp.u, decomp.eigenvalues)


def reduce_via_u(x, decomp: EigenDecomposition, k: int) -> PrincipalComponents:
    """Keep the first ``k`` eigenvectors, then project: ``P' = X U'``."""
    k = _check_k(k, decomp.m)
    return principal_components(x, decomp.u[:, :k], decomp.eigenvalues[:k])


def reduce_via_p(p: PrincipalComponents, k: int) -> PrincipalComponents:
    """Drop all but the first ``k`` columns of an existing score matrix."""
    k = _check_k(k, p.k)
    return PrincipalComponents(p.p[:, :k], p.component_variances[:k])


def component_loadings(decomp: EigenDecomposition) -> np.ndarray:
    """Correlations between variables (rows) and components (columns), ``U S``."""
    l = decomp.u * decomp.s.diagonal
    l.flags.writeable = False
    return l


def direct_component_correlations(x, p: PrincipalComponents) -> np.ndarray:
    """Variable/component correlations computed from the data.

    Entry ``[i, j]`` is ``x_i . p_j / (n * sqrt(lambda_j))``: the covariance of
    a unit-variance variable with a component, divided by the component's
    standard deviation. This is the expensive route to the same matrix as
    :func:`component_loadings`.

    Raises:
        ShapeError: if ``x`` and ``p`` have different row counts.
        ZeroVarianceError: if a component has no variance.
    """
    x = _require_standardized(x)
    if p.p.shape[0] != x.n:
        raise ShapeError(f"{x.n} observations but {p.p.shape[0]} component rows")
    lam = p.component_variances
    bad = np.flatnonzero(lam <= 0)
    if bad.size:
        raise ZeroVarianceError(f"component {bad[0]} has zero variance", column=int(bad[0]))
    r = (x.values.T @ p.p) / x.n / np.sqrt(lam)
    r.flags.writeable = False
    return r


def component_common_variance(loadings) -> np.ndarray:
    """Share of each variable's variance carried by each component."""
    return determination_matrix(loadings)


def select_k(d, threshold: float = DEFAULT_THRESHOLD) -> int:
    """Fewest leading components that carry ``threshold`` of every variable.

    Returns the smallest ``k`` such that each row of ``d`` has a cumulative
    sum over its first ``k`` columns of at least ``threshold``, or the full
    column count when no smaller ``k`` qualifies.
    """
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must be in (0, 1], got {threshold!r}")
    d = np.asarray(d, dtype=np.float64)
    cumulative = np.cumsum(d, axis=1)
    for k in range(1, d.shape[1]):
        if np.all(cumulative[:, k - 1] >= threshold):
            return k
    return d.shape[1]


def aggregate_explained_variance(decomp: EigenDecomposition) -> np.ndarray:
    """Cumulative fraction of total variance, ``sum(lambda[:k]) / m``."""
    return np.cumsum(decomp.eigenvalues) / decomp.m
