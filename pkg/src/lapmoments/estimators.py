"""scikit-learn compatible transformers over collections of graphs.

Each transformer is stateless: ``fit`` only validates its input, and
``transform`` maps a sequence of graphs (``Graph`` objects or adjacency
arrays) to one feature row per graph, so the steps drop into a
:class:`~sklearn.pipeline.Pipeline` ahead of any estimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .bounds import bound_report
from .census import CORRELATION_NAMES, compute_census
from .graph import laplacian_matrix
from .moments import MAX_STRUCTURAL_ORDER, moments_structural, moments_trace
from .validation import check_graphs, check_order, check_tol

__all__ = ["CensusFeatures", "LaplacianMoments", "SpectralSupportBounds"]

CENSUS_FEATURES = ("S1", "S2", "S3", "S4", "S5", "Delta", "Q", "P") + CORRELATION_NAMES


class _GraphTransformer(TransformerMixin, BaseEstimator):
    def fit(self, X, y=None):
        check_graphs(X)
        self._validate_params()
        return self

    def _validate_params(self):
        pass

    def get_feature_names_out(self, input_features=None):
        return np.array(self._feature_names(), dtype=object)


class CensusFeatures(_GraphTransformer):
    """Degree power sums, cycle totals and correlation terms as floats."""

    def _feature_names(self):
        return list(CENSUS_FEATURES)

    def transform(self, X):
        rows = []
        for g in check_graphs(X):
            c = compute_census(g)
            rows.append(
                [*c.S[:5], c.Delta, c.Q, c.P, *(float(c.corr[k]) for k in CORRELATION_NAMES)]
            )
        return np.array(rows, dtype=float)


class LaplacianMoments(_GraphTransformer):
    """Laplacian spectral moments ``m_1..m_order`` per graph.

    Parameters
    ----------
    order : int
        Number of moments. Above 5 requires ``method="trace"``.
    method : {"structural", "trace"}
        Closed forms from the local census, or exact traces of ``L^k``.
    scaled : bool
        Return ``n m_k / (n - 1)``, the moments of the nontrivial spectrum.
    """

    def __init__(self, order=5, method="structural", scaled=False):
        self.order = order
        self.method = method
        self.scaled = scaled

    def _validate_params(self):
        check_order(self.order)
        if self.method not in ("structural", "trace"):
            raise ValueError(f"method must be 'structural' or 'trace', got {self.method!r}")
        if self.method == "structural" and self.order > MAX_STRUCTURAL_ORDER:
            raise ValueError("structural moments stop at order 5; use method='trace'")

    def _feature_names(self):
        return [f"m{k}" for k in range(1, self.order + 1)]

    def transform(self, X):
        self._validate_params()
        rows = []
        for g in check_graphs(X):
            if self.method == "trace":
                ms = moments_trace(laplacian_matrix(g), self.order)
            else:
                ms = moments_structural(compute_census(g))
            vals = ms.scaled if self.scaled else ms.m
            rows.append([float(v) for v in vals[: self.order]])
        return np.array(rows, dtype=float)


class SpectralSupportBounds(_GraphTransformer):
    """Moment bounds ``(alpha, beta)`` with ``lambda_2 <= alpha`` and ``beta <= lambda_n``."""

    def __init__(self, s=2, tol=1e-9, oracle_moments=False, include_zero=False):
        self.s = s
        self.tol = tol
        self.oracle_moments = oracle_moments
        self.include_zero = include_zero

    def _validate_params(self):
        check_order(self.s)
        check_tol(self.tol)

    def _feature_names(self):
        return ["alpha", "beta"]

    def transform(self, X):
        self._validate_params()
        out = []
        for g in check_graphs(X):
            r = bound_report(
                g,
                self.s,
                self.tol,
                oracle_moments=self.oracle_moments,
                include_zero=self.include_zero,
            )
            out.append([r.alpha, r.beta])
        return np.array(out, dtype=float)
