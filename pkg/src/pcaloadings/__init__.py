"""Principal components, factor loadings and the correlations between them.

Typical use::

    from pcaloadings import correlation_matrix, eigen_decompose, component_loadings

    r = correlation_matrix(data)          # n x m observations
    decomp = eigen_decompose(r)
    loadings = component_loadings(decomp) # U S: variable/component correlations
"""

from .correlation import (
    DataMatrix,
    covariance_matrix,
    correlation_matrix,
    determination_matrix,
    pearson,
    standardize_columns,
)
from .dataset import Dataset, ingest_csv
from .eigen import EigenDecomposition, eigen_decompose, jacobi_eigh, sqrt_eigenvalues
from .errors import (
    ConvergenceError,
    DataError,
    NumericalError,
    PcaLoadingsError,
    ShapeError,
    ZeroVarianceError,
)
from .factor import (
    FactorModel,
    factor_common_variance,
    factor_loadings,
    implied_correlation,
    reduce_loadings,
    reduced_loadings_from_eigen,
    simulate,
)
from .matrix import DiagonalMatrix, diag_power, hadamard, matmul, transpose
from .pca import (
    PrincipalComponents,
    component_common_variance,
    component_loadings,
    direct_component_correlations,
    full_components,
    principal_components,
    reduce_via_p,
    reduce_via_u,
    select_k,
)
from .report import AnalysisReport, run_analysis, verify_identity
from .stats import Convention, center, linear_transform, mean, standardize, std, variance

__version__ = "0.1.0"
