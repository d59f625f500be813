import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import correlated_data
from pcaloadings.correlation import correlation_matrix
from pcaloadings.eigen import (
    EigenDecomposition,
    eigen_decompose,
    jacobi_eigh,
    orient_columns,
    sqrt_eigenvalues,
)
from pcaloadings.errors import ConvergenceError, NegativeEigenvalueError

SQ2 = 1 / math.sqrt(2)


def random_r(seed, m, n=None):
    g = np.random.default_rng(seed)
    return correlation_matrix(correlated_data(g, n or 3 * m + 10, m, mix=g.uniform(0.2, 2.0)))


def test_identity():
    d = eigen_decompose(np.eye(2))
    np.testing.assert_array_equal(d.eigenvalues, [1, 1])
    np.testing.assert_array_equal(d.u, np.eye(2))
    assert d.degenerate_pairs() == [(0, 1)]


def test_two_by_two():
    d = eigen_decompose([[1, 0.6], [0.6, 1]])
    np.testing.assert_allclose(d.eigenvalues, [1.6, 0.4], atol=1e-15)
    np.testing.assert_allclose(d.u, [[SQ2, SQ2], [SQ2, -SQ2]], atol=1e-15)
    assert d.degenerate_pairs() == []


def test_random_five_reconstructs():
    r = random_r(5, 5)
    d = eigen_decompose(r)
    assert np.max(np.abs(d.reconstruct() - r)) < 1e-9


def test_rank_one_pair():
    d = eigen_decompose([[1, 1], [1, 1]])
    np.testing.assert_allclose(d.eigenvalues, [2, 0], atol=1e-15)
    assert d.eigenvalues.min() >= 0


def test_sqrt_eigenvalues():
    d = EigenDecomposition([4.0, 1.0, 0.0], np.eye(3))
    np.testing.assert_array_equal(sqrt_eigenvalues(d).diagonal, [2, 1, 0])
    d = eigen_decompose([[1, 0.6], [0.6, 1]])
    np.testing.assert_allclose(sqrt_eigenvalues(d).diagonal, [math.sqrt(1.6), math.sqrt(0.4)], atol=1e-15)
    np.testing.assert_array_equal(sqrt_eigenvalues(eigen_decompose(np.eye(4))).dense(), np.eye(4))
    np.testing.assert_array_equal(d.s.diagonal, sqrt_eigenvalues(d).diagonal)


def test_matches_lapack():
    r = random_r(11, 12)
    d = eigen_decompose(r)
    ref = np.linalg.eigvalsh(r)[::-1]
    np.testing.assert_allclose(d.eigenvalues, ref, atol=1e-12)


def test_sign_convention(rng):
    for m in (3, 7, 15):
        d = eigen_decompose(random_r(m, m))
        for j in range(m):
            col = d.u[:, j]
            assert col[np.argmax(np.abs(col))] > 0


def test_orient_columns_tie_breaks_on_lowest_row():
    u = orient_columns(np.array([[-SQ2, -0.6], [SQ2, 0.8]]))
    np.testing.assert_array_equal(u, [[SQ2, -0.6], [-SQ2, 0.8]])


def test_negative_eigenvalue_rejected():
    # unit diagonal and |r| <= 1, but not positive semidefinite
    r = np.array([[1, 0.9, -0.9], [0.9, 1, 0.9], [-0.9, 0.9, 1]])
    with pytest.raises(NegativeEigenvalueError):
        eigen_decompose(r)


def test_convergence_cap():
    with pytest.raises(ConvergenceError):
        jacobi_eigh([[1, 0.5], [0.5, 1]], max_sweeps=0)


def test_already_diagonal_needs_no_sweeps():
    values, vectors, sweeps = jacobi_eigh(np.diag([3.0, 1.0, 2.0]))
    assert sweeps == 0
    np.testing.assert_array_equal(values, [3, 1, 2])


def test_sorting_keeps_pairs():
    # diagonal input: sorting must move each unit vector with its value
    values, _, _ = jacobi_eigh(np.diag([0.5, 2.0, 0.5]))
    d = EigenDecomposition(values, np.eye(3))
    assert list(d.eigenvalues) == [0.5, 2.0, 0.5]
    r = np.array([[1, 0, 0.5], [0, 1, 0], [0.5, 0, 1]])
    d = eigen_decompose(r)
    for j in range(3):
        np.testing.assert_allclose(r @ d.u[:, j], d.eigenvalues[j] * d.u[:, j], atol=1e-14)


def test_degenerate_subspace_properties():
    # equicorrelated: one large eigenvalue and an (m-1)-fold degenerate one
    m, rho = 5, 0.3
    r = np.full((m, m), rho) + (1 - rho) * np.eye(m)
    d = eigen_decompose(r)
    np.testing.assert_allclose(d.eigenvalues, [1 + (m - 1) * rho] + [1 - rho] * (m - 1), atol=1e-12)
    assert len(d.degenerate_pairs()) == m - 2
    assert np.max(np.abs(d.reconstruct() - r)) < 1e-12
    assert np.max(np.abs(d.u.T @ d.u - np.eye(m))) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 20))
def test_invariants(seed, m):
    r = random_r(seed, m)
    d = eigen_decompose(r)
    lam, u = d.eigenvalues, d.u
    assert np.all(np.diff(lam) <= 0)
    assert lam.min() >= 0
    assert abs(lam.sum() - m) < 1e-8
    assert np.max(np.abs(u.T @ u - np.eye(m))) < 1e-10
    assert np.max(np.abs(r @ u - u * lam)) < 1e-8
    assert np.max(np.abs(d.reconstruct() - r)) < 1e-9


def test_rank_deficient_clamps(rng):
    z = rng.standard_normal((30, 2))
    x = np.c_[z, z[:, 0] + z[:, 1]]
    d = eigen_decompose(correlation_matrix(x))
    assert d.eigenvalues[-1] == pytest.approx(0, abs=1e-12)
    assert d.eigenvalues.min() >= 0
