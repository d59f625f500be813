import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import correlated_data
from pcaloadings.correlation import (
    DataMatrix,
    check_correlation_matrix,
    correlation_matrix,
    covariance_matrix,
    determination_matrix,
    pearson,
    standardize_columns,
)
from pcaloadings.errors import DataError, OutOfRangeError, ShapeError, ZeroVarianceError
from pcaloadings.stats import linear_transform, variance


def test_covariance_examples():
    np.testing.assert_allclose(covariance_matrix([[-1], [0], [1]]), [[2 / 3]], atol=1e-15)
    same = covariance_matrix(np.c_[[1.0, 2, 6], [1.0, 2, 6]])
    assert np.ptp(same) == 0
    # zero dot product after centering
    orth = covariance_matrix(np.c_[[1.0, -1, 0], [1.0, 1, -2]])
    assert orth[0, 1] == pytest.approx(0.0, abs=1e-15)


def test_covariance_centers_raw_input(rng):
    x = correlated_data(rng, 40, 3)
    c = covariance_matrix(x)
    for j in range(3):
        assert c[j, j] == pytest.approx(variance(x[:, j]), rel=1e-12)
    np.testing.assert_array_equal(c, c.T)


def test_standardize_columns_examples(rng):
    z = standardize_columns(correlated_data(rng, 30, 3))
    assert z.standardized
    again = standardize_columns(DataMatrix(z.values))
    np.testing.assert_allclose(again.values, z.values, atol=1e-10)

    with pytest.raises(ZeroVarianceError) as info:
        standardize_columns(np.c_[[1.0, 2, 3], [4.0, 4, 4], [1.0, 0, 1]])
    assert info.value.column == 1

    one = standardize_columns([[2.0], [4.0], [6.0]])
    np.testing.assert_allclose(one.values[:, 0], np.array([-2, 0, 2]) / math.sqrt(8 / 3), atol=1e-15)


def test_data_matrix_checks_standardized_flag():
    with pytest.raises(DataError):
        DataMatrix([[1.0, 2.0], [3.0, 4.0]], standardized=True)
    with pytest.raises(DataError):
        DataMatrix([[1.0, 2.0]])


def test_pearson_examples(rng):
    x = rng.standard_normal(20)
    assert pearson(x, x) == pytest.approx(1.0, abs=1e-15)
    assert pearson(x, linear_transform(x, 3.0, -2.5)) == pytest.approx(-1.0, abs=1e-15)
    assert pearson(x, linear_transform(x, -1.0, 0.1)) == pytest.approx(1.0, abs=1e-15)
    assert pearson([-1, 0, 1], [1, 0, -1]) == -1.0


def test_pearson_errors():
    with pytest.raises(ShapeError):
        pearson([1, 2, 3], [1, 2])
    with pytest.raises(ZeroVarianceError):
        pearson([1, 2, 3], [5, 5, 5])


def test_correlation_matrix_examples(rng):
    r = correlation_matrix(correlated_data(rng, 25, 4))
    np.testing.assert_allclose(np.diag(r), 1.0, atol=1e-10)

    x = rng.standard_normal(30)
    prop = correlation_matrix(np.c_[x, 3.5 * x])
    assert prop[0, 1] == pytest.approx(1.0, abs=1e-12)

    x = correlated_data(rng, 50, 3)
    np.testing.assert_allclose(correlation_matrix(x), oracles.pairwise_correlation(x), atol=1e-10, rtol=0)


def test_correlation_matrix_same_for_raw_and_standardized(rng):
    x = correlated_data(rng, 60, 5)
    np.testing.assert_allclose(
        correlation_matrix(x), correlation_matrix(standardize_columns(x)), atol=1e-12, rtol=0
    )


def test_determination_examples(rng):
    np.testing.assert_array_equal(determination_matrix(np.eye(3)), np.eye(3))
    assert determination_matrix([[1.0, -0.5], [-0.5, 1.0]])[0, 1] == 0.25
    r = correlation_matrix(correlated_data(rng, 50, 3))
    expected = [[v * v for v in row] for row in r.tolist()]
    np.testing.assert_allclose(determination_matrix(r), expected, atol=1e-15, rtol=0)


def test_determination_range():
    d = determination_matrix([[1.0 + 5e-10, 0.2]])
    assert d.max() <= 1.0
    with pytest.raises(OutOfRangeError):
        determination_matrix([[1.01]])


def test_check_correlation_matrix():
    with pytest.raises(DataError):
        check_correlation_matrix([[1.0, 0.5], [0.4, 1.0]])
    with pytest.raises(DataError):
        check_correlation_matrix([[2.0, 0.5], [0.5, 1.0]])
    with pytest.raises(ShapeError):
        check_correlation_matrix([[1.0, 0.5]])


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=60)
@given(seeds, st.floats(-100, 100), st.floats(-20, 20).filter(lambda b: abs(b) > 1e-2))
def test_affine_invariance(seed, a, b):
    g = np.random.default_rng(seed)
    x, y = g.standard_normal(40), g.standard_normal(40)
    r = pearson(x, y)
    r2 = pearson(linear_transform(x, a, b), y)
    assert abs(r2) == pytest.approx(abs(r), abs=1e-10)
    assert r2 * r2 == pytest.approx(r * r, abs=1e-10)


@settings(max_examples=40)
@given(seeds, st.integers(2, 200), st.integers(1, 6))
def test_length_variance_relation(seed, n, m):
    g = np.random.default_rng(seed)
    x = correlated_data(g, n, m)
    xc = x - x.mean(axis=0)
    for j in range(m):
        v = variance(x[:, j])
        assert np.dot(xc[:, j], xc[:, j]) == pytest.approx(n * v, rel=1e-10)
    z = standardize_columns(x).values
    np.testing.assert_allclose(np.linalg.norm(z, axis=0), math.sqrt(n), rtol=1e-10)


@settings(max_examples=30)
@given(seeds, st.integers(3, 80), st.integers(2, 6))
def test_matrix_agrees_with_pairwise(seed, n, m):
    x = correlated_data(np.random.default_rng(seed), n, m, mix=2.0)
    r = correlation_matrix(x)
    np.testing.assert_allclose(r, oracles.pairwise_correlation(x), atol=1e-10, rtol=0)
    assert np.abs(r).max() <= 1 + 1e-12
    np.testing.assert_array_equal(r, r.T)
