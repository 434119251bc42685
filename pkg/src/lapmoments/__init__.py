"""Laplacian spectral moments from local graph structure, and moment-based
bounds on the spectral gap and spectral radius."""

from __future__ import annotations

__version__ = "0.1.0"

from .bounds import (
    BoundResult,
    HankelPair,
    alpha_bound,
    beta_bound,
    bound_report,
    hankel_pair,
    is_feasible,
    localizing_matrix,
    pencil_extremes,
    support_bounds,
)
from .census import CORRELATION_NAMES, StructuralCensus, compute_census, correlation_terms, cycle_census, power_sums
from .estimators import CensusFeatures, LaplacianMoments, SpectralSupportBounds
from .graph import (
    DuplicateEdgeWarning,
    Graph,
    GraphFormatError,
    LaplacianGraph,
    adjacency_matrix,
    connected_components,
    generate,
    laplacian_graph,
    laplacian_matrix,
    parse_edge_list,
    parse_matrix_market,
    read_graph,
    to_edge_list,
)
from .moments import MomentSequence, moments_from_spectrum, moments_structural, moments_trace, scale_nontrivial
from .numerics import ConvergenceError, int_power_trace, ldlt_psd, sym_eigenvalues
from .report import AnalysisReport, GraphSummary
from .walks import class_closed_forms, closed_walks, moments_via_walks, walk_class_sums

__all__ = [
    "__version__",
    "AnalysisReport",
    "BoundResult",
    "CORRELATION_NAMES",
    "CensusFeatures",
    "ConvergenceError",
    "DuplicateEdgeWarning",
    "Graph",
    "GraphFormatError",
    "GraphSummary",
    "HankelPair",
    "LaplacianGraph",
    "LaplacianMoments",
    "MomentSequence",
    "SpectralSupportBounds",
    "StructuralCensus",
    "adjacency_matrix",
    "alpha_bound",
    "beta_bound",
    "bound_report",
    "class_closed_forms",
    "closed_walks",
    "compute_census",
    "connected_components",
    "correlation_terms",
    "cycle_census",
    "generate",
    "hankel_pair",
    "int_power_trace",
    "is_feasible",
    "laplacian_graph",
    "laplacian_matrix",
    "ldlt_psd",
    "localizing_matrix",
    "moments_from_spectrum",
    "moments_structural",
    "moments_trace",
    "moments_via_walks",
    "parse_edge_list",
    "parse_matrix_market",
    "pencil_extremes",
    "power_sums",
    "read_graph",
    "scale_nontrivial",
    "support_bounds",
    "sym_eigenvalues",
    "to_edge_list",
    "walk_class_sums",
]
