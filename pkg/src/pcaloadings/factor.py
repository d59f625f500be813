"""Linear factor model built from the eigen-structure of a correlation matrix.

Standardized variables are modeled as ``x = L' f`` for ``k`` independent
standardized factors ``f``. In data-matrix orientation (observations in rows)
this is ``X = F L'^T``, with ``F`` of shape ``samples x k``.

A reduced model (``k < m``) carries only the communality of each variable,
so simulated variables have variance below one. Nothing restandardizes them;
:attr:`FactorModel.modeled_variance` reports the deficit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .correlation import DataMatrix, determination_matrix
from .eigen import EigenDecomposition
from .errors import DataError, ShapeError
from .matrix import as_matrix
from .pca import _check_k, component_loadings

# draws a (samples, k) array of independent zero-mean unit-variance variates
Sampler = Callable[[np.random.Generator, tuple], np.ndarray]


def standard_normal_sampler(rng: np.random.Generator, shape: tuple) -> np.ndarray:
    return rng.standard_normal(shape)


@dataclass(frozen=True)
class FactorModel:
    """Loadings of ``m`` variables on ``k`` retained factors."""

    loadings: np.ndarray

    def __post_init__(self):
        l = np.array(as_matrix(self.loadings, "loadings"))
        if l.shape[1] > l.shape[0]:
            raise ShapeError(f"more factors than variables: {l.shape}")
        communality = np.einsum("ij,ij->i", l, l)
        if communality.max() > 1 + 1e-8:
            raise DataError(
                f"loadings imply a variance of {communality.max():.10g} > 1 "
                "for a standardized variable"
            )
        l.flags.writeable = False
        object.__setattr__(self, "loadings", l)

    @property
    def k(self) -> int:
        return self.loadings.shape[1]

    @property
    def source_dimension(self) -> int:
        return self.loadings.shape[0]

    @property
    def modeled_variance(self) -> np.ndarray:
        """Per-variable communality: variance reproduced by the retained factors."""
        return np.einsum("ij,ij->i", self.loadings, self.loadings)


def factor_loadings(decomp: EigenDecomposition) -> np.ndarray:
    """Factor loadings ``L = U S``; the same matrix as the component loadings."""
    return component_loadings(decomp)


def reduce_loadings(loadings, k: int) -> FactorModel:
    """Keep the first ``k`` columns of a full loadings matrix."""
    l = as_matrix(loadings, "loadings")
    return FactorModel(l[:, : _check_k(k, l.shape[1])])


def reduced_loadings_from_eigen(decomp: EigenDecomposition, k: int) -> FactorModel:
    """``L' = U' S'`` from the truncated eigenvectors and standard deviations."""
    k = _check_k(k, decomp.m)
    return FactorModel(decomp.u[:, :k] * decomp.s.truncate(k).diagonal)


def implied_correlation(model: FactorModel) -> np.ndarray:
    """Correlation structure reproduced by the model, ``L' L'^T``."""
    l = model.loadings
    c = l @ l.T
    c = (c + c.T) / 2
    c.flags.writeable = False
    return c


def factor_common_variance(model: FactorModel) -> np.ndarray:
    return determination_matrix(model.loadings)


def simulate(
    model: FactorModel,
    samples: int,
    seed: int,
    sampler: Optional[Sampler] = None,
) -> DataMatrix:
    """Draw ``samples`` observations of the modeled variables.

    Factors come from numpy's PCG64 bit generator seeded with ``seed``; by
    default they are standard normal (ziggurat method), drawn in one block
    of shape ``(samples, k)``. The same seed always gives the same output on
    a given numpy version.
    """
    if isinstance(samples, bool) or int(samples) != samples or samples < 2:
        raise ValueError(f"samples must be an integer >= 2, got {samples!r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    draw = sampler or standard_normal_sampler
    f = np.asarray(draw(rng, (int(samples), model.k)), dtype=np.float64)
    if f.shape != (samples, model.k):
        raise ShapeError(f"sampler returned shape {f.shape}, expected {(samples, model.k)}")
    return DataMatrix(f @ model.loadings.T)
