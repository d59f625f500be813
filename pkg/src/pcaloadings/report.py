"""End-to-end analysis of a dataset and its JSON/CSV report."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import pca
from .correlation import correlation_matrix, standardize_columns
from .dataset import Dataset, write_matrix_csv
from .eigen import EigenDecomposition, eigen_decompose
from .errors import ZeroVarianceError
from .factor import implied_correlation, reduce_loadings

MODES = ("pca", "fa")
# components with less variance than this are left out of the identity check
VERIFY_MIN_EIGENVALUE = 1e-8
VERIFY_TOL = 1e-9


def component_labels(mode: str, k: int) -> list[str]:
    prefix = "PC" if mode == "pca" else "F"
    return [f"{prefix}{j + 1}" for j in range(k)]


@dataclass(frozen=True)
class AnalysisReport:
    variables: tuple
    mode: str
    n_observations: int
    correlation: np.ndarray
    eigenvalues: np.ndarray
    loadings: np.ndarray
    common_variance: np.ndarray
    selected_k: int
    threshold: float
    per_variable_communality_at_k: np.ndarray
    aggregate_explained_variance: np.ndarray
    degenerate_pairs: tuple = ()
    source_path: str = ""
    # pca mode: reduced scores P'; fa mode: reduced loadings L' and L'L'^T
    reduced_components: Optional[np.ndarray] = None
    reduced_loadings: Optional[np.ndarray] = None
    implied_correlation: Optional[np.ndarray] = None

    @property
    def labels(self) -> list[str]:
        return component_labels(self.mode, len(self.eigenvalues))

    def to_dict(self) -> dict:
        names = list(self.variables)
        labels = self.labels
        k_labels = labels[: self.selected_k]
        doc = {
            "source": self.source_path,
            "mode": self.mode,
            "n_observations": self.n_observations,
            "variables": names,
            "threshold": self.threshold,
            "selected_k": self.selected_k,
            "eigenvalues": _floats(self.eigenvalues),
            "aggregate_explained_variance": _floats(self.aggregate_explained_variance),
            "per_variable_communality_at_k": dict(zip(names, _floats(self.per_variable_communality_at_k))),
            "degenerate_eigenpairs": [[labels[i], labels[j]] for i, j in self.degenerate_pairs],
            "correlation": _labeled(self.correlation, names, names),
            "loadings": _labeled(self.loadings, names, labels),
            "common_variance": _labeled(self.common_variance, names, labels),
        }
        if self.reduced_components is not None:
            rows = [str(i + 1) for i in range(self.reduced_components.shape[0])]
            doc["reduced_components"] = _labeled(self.reduced_components, rows, k_labels)
        if self.reduced_loadings is not None:
            doc["reduced_loadings"] = _labeled(self.reduced_loadings, names, k_labels)
            doc["implied_correlation"] = _labeled(self.implied_correlation, names, names)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def export_csv(self, directory) -> list[Path]:
        """Write each matrix of the report as a labeled CSV file."""
        out = Path(directory)
        out.mkdir(parents=True, exist_ok=True)
        names = list(self.variables)
        labels = self.labels
        k_labels = labels[: self.selected_k]
        files = {
            "correlation.csv": (self.correlation, names, names),
            "loadings.csv": (self.loadings, names, labels),
            "common_variance.csv": (self.common_variance, names, labels),
        }
        if self.reduced_components is not None:
            rows = [str(i + 1) for i in range(self.reduced_components.shape[0])]
            files["reduced_components.csv"] = (self.reduced_components, rows, k_labels)
        if self.reduced_loadings is not None:
            files["reduced_loadings.csv"] = (self.reduced_loadings, names, k_labels)
            files["implied_correlation.csv"] = (self.implied_correlation, names, names)
        written = []
        for fname, (values, rows, cols) in files.items():
            write_matrix_csv(out / fname, values, rows, cols)
            written.append(out / fname)
        return written


def _floats(values) -> list:
    # float() drops numpy scalar types so json emits plain reprs
    return [float(v) for v in np.asarray(values).reshape(-1)]


def _labeled(values, rows, columns) -> dict:
    return {
        "rows": list(rows),
        "columns": list(columns),
        "values": [_floats(r) for r in np.asarray(values)],
    }


def _standardize(dataset: Dataset):
    try:
        return standardize_columns(dataset.data)
    except ZeroVarianceError as exc:
        name = dataset.column_names[exc.column]
        raise ZeroVarianceError(
            f"column {name!r} has zero variance", column=exc.column, name=name
        ) from exc


def decompose(dataset: Dataset):
    """Standardized data, correlation matrix and eigen-structure of a dataset."""
    z = _standardize(dataset)
    r = correlation_matrix(z)
    return z, r, eigen_decompose(r)


def run_analysis(dataset: Dataset, threshold: float = pca.DEFAULT_THRESHOLD, mode: str = "pca") -> AnalysisReport:
    """Standardize, correlate, decompose, and pick the number of components.

    The loadings are the same in both modes. ``mode`` changes labeling and
    the reduced artifacts: scores ``P'`` for ``pca``, loadings ``L'`` and the
    implied correlation ``L' L'^T`` for ``fa``.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must be in (0, 1], got {threshold!r}")
    z, r, decomp = decompose(dataset)
    loadings = pca.component_loadings(decomp)
    d = pca.component_common_variance(loadings)
    k = pca.select_k(d, threshold)

    extra = {}
    if mode == "pca":
        extra["reduced_components"] = pca.reduce_via_u(z, decomp, k).p
    else:
        model = reduce_loadings(loadings, k)
        extra["reduced_loadings"] = model.loadings
        extra["implied_correlation"] = implied_correlation(model)

    return AnalysisReport(
        variables=dataset.column_names,
        mode=mode,
        n_observations=z.n,
        correlation=r,
        eigenvalues=decomp.eigenvalues,
        loadings=loadings,
        common_variance=d,
        selected_k=k,
        threshold=float(threshold),
        per_variable_communality_at_k=d[:, :k].sum(axis=1),
        aggregate_explained_variance=pca.aggregate_explained_variance(decomp),
        degenerate_pairs=tuple(decomp.degenerate_pairs()),
        source_path=dataset.source_path,
        **extra,
    )


@dataclass(frozen=True)
class Verification:
    max_deviation: float
    compared: int
    skipped: int
    tolerance: float = VERIFY_TOL

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance


def verify_identity(dataset: Dataset, min_eigenvalue: float = VERIFY_MIN_EIGENVALUE) -> Verification:
    """Compare ``U S`` against correlations measured between data and scores.

    Components whose variance is at or below ``min_eigenvalue`` have no
    defined correlation and are skipped.
    """
    z, _, decomp = decompose(dataset)
    keep = int(np.sum(decomp.eigenvalues > min_eigenvalue))
    if keep == 0:
        return Verification(0.0, 0, decomp.m)
    scores = pca.reduce_via_u(z, decomp, keep)
    direct = pca.direct_component_correlations(z, scores)
    closed = pca.component_loadings(decomp)[:, :keep]
    return Verification(float(np.max(np.abs(direct - closed))), keep, decomp.m - keep)
