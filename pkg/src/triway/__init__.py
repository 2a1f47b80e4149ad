"""Euclidean embedding of three-way (a)symmetric dissimilarity data.

Stacks of square object-by-object dissimilarity matrices (one per
occasion) are arranged into a single data matrix, embedded in the plane
via the eigendecomposition of its covariance (the h-plot), and the
per-object profile coordinates are summarized with archetypoid analysis
and k-medoid clustering.
"""

from .archetypoid import (AdaResult, Archetypoids, ElbowResult, ada, elbow,
                          rss_curve, solve_alphas)
from .clustering import (ClusterResult, PAMClustering, auto_k, pam,
                         quality_label, silhouette)
from .dataset import (ThreeWayDissimilarity, load_json, load_long_csv,
                      loads_long_csv, power_transform, rank_transform,
                      save_json, save_long_csv, similarity_to_dissimilarity)
from .datasets import load_journals, load_messages
from .hplot import HPlotEmbedding, HPlotResult, covariance, gof, hplot, sym_eigen
from .threeway import (ArrangedMatrix, AsymmetryReport, NearestPair,
                       ProfileMatrix, ProfileTag, arrange, asymmetry_report,
                       correlate_covariate, nearest_profiles, project)

__version__ = "0.1.0"

__all__ = [
    "AdaResult",
    "Archetypoids",
    "ArrangedMatrix",
    "AsymmetryReport",
    "ClusterResult",
    "ElbowResult",
    "HPlotEmbedding",
    "HPlotResult",
    "NearestPair",
    "PAMClustering",
    "ProfileMatrix",
    "ProfileTag",
    "ThreeWayDissimilarity",
    "ada",
    "arrange",
    "asymmetry_report",
    "auto_k",
    "correlate_covariate",
    "covariance",
    "elbow",
    "gof",
    "hplot",
    "load_journals",
    "load_json",
    "load_long_csv",
    "load_messages",
    "loads_long_csv",
    "nearest_profiles",
    "pam",
    "power_transform",
    "project",
    "quality_label",
    "rank_transform",
    "rss_curve",
    "save_json",
    "save_long_csv",
    "silhouette",
    "similarity_to_dissimilarity",
    "solve_alphas",
    "sym_eigen",
]
