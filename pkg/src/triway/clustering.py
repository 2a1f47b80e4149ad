"""Partitioning around medoids on profile rows, with silhouette selection.

Dissimilarity is plain Euclidean distance between rows of Y.  The
optimizer is the classic deterministic PAM: greedy BUILD then
best-improvement SWAP, no randomized restarts.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import as_float_matrix, check_count, freeze

QUALITY_THRESHOLDS = ((0.7, "strong"), (0.5, "reasonable"), (0.25, "weak"))


def quality_label(average_silhouette: float) -> str:
    """Map an average silhouette to strong/reasonable/weak/none.

    Thresholds are strict: a value exactly on a boundary falls to the
    lower label.
    """
    for threshold, label in QUALITY_THRESHOLDS:
        if average_silhouette > threshold:
            return label
    return "none"


@dataclass(frozen=True, eq=False)
class ClusterResult:
    """Medoids, assignment, objective, and silhouette summary."""

    k: int
    medoid_indices: tuple
    assignment: np.ndarray = field(repr=False, default=None)
    objective: float = 0.0
    silhouette_per_point: np.ndarray = field(repr=False, default=None)
    average_silhouette: float = 0.0
    quality: str = "none"

    def to_record(self, labels) -> dict:
        """JSON record ``{k, medoids, clusters, objective, silhouette_avg, quality}``."""
        return {
            "k": self.k,
            "medoids": [labels[i] for i in self.medoid_indices],
            "clusters": {labels[i]: int(c)
                         for i, c in enumerate(self.assignment)},
            "objective": float(self.objective),
            "silhouette_avg": float(self.average_silhouette),
            "quality": self.quality,
        }


def _pairwise_distances(Y: np.ndarray) -> np.ndarray:
    diff = Y[:, None, :] - Y[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def silhouette(Y, assignment):
    """Per-point silhouette values and their average.

    s(i) = (b - a) / max(a, b) with a the mean distance to the point's
    own cluster (excluding itself) and b the smallest mean distance to
    another cluster.  Singletons score 0; so does the degenerate
    a = b = 0 case.  A single-cluster assignment is undefined and yields
    zeros with a warning.
    """
    Y = as_float_matrix(Y, "Y")
    labels = np.asarray(assignment)
    n = Y.shape[0]
    if labels.shape != (n,):
        raise ValueError(f"assignment must have length {n}")
    clusters = np.unique(labels)
    values = np.zeros(n)
    if clusters.size < 2:
        warnings.warn("single cluster: silhouette undefined, returning zeros",
                      UserWarning, stacklevel=2)
        return freeze(values), 0.0
    dist = _pairwise_distances(Y)
    for i in range(n):
        own = labels == labels[i]
        own[i] = False
        if not own.any():
            continue  # singleton contributes 0
        a = dist[i, own].mean()
        b = min(dist[i, labels == c].mean()
                for c in clusters if c != labels[i])
        denom = max(a, b)
        values[i] = 0.0 if denom == 0.0 else (b - a) / denom
    return freeze(values), float(values.mean())


def pam(Y, k: int) -> ClusterResult:
    """Cluster the rows of Y around k medoids.

    BUILD greedily adds the point that most reduces the total
    point-to-nearest-medoid distance (lowest index on ties); SWAP then
    repeatedly applies the single best strictly-improving
    (medoid, non-medoid) exchange.  Assignment maps every point to its
    nearest medoid (lowest cluster on ties) with each medoid pinned to
    its own cluster.
    """
    Y = as_float_matrix(Y, "Y")
    n = Y.shape[0]
    k = check_count(k, 1, n, "k")
    dist = _pairwise_distances(Y)

    medoids = [int(np.argmin(dist.sum(axis=1)))]
    nearest = dist[medoids[0]].copy()
    while len(medoids) < k:
        best_c, best_obj = None, math.inf
        for c in range(n):
            if c in medoids:
                continue
            obj = float(np.minimum(nearest, dist[c]).sum())
            if obj < best_obj:
                best_c, best_obj = c, obj
        medoids.append(best_c)
        nearest = np.minimum(nearest, dist[best_c])
    medoids.sort()

    current = float(dist[medoids].min(axis=0).sum())
    while True:
        best_set, best_obj = None, current
        for out in medoids:
            for cin in range(n):
                if cin in medoids:
                    continue
                candidate = sorted(set(medoids) - {out} | {cin})
                obj = float(dist[candidate].min(axis=0).sum())
                if obj < best_obj:
                    best_set, best_obj = candidate, obj
        if best_set is None:
            break
        medoids, current = best_set, best_obj

    med = np.asarray(medoids)
    assignment = np.argmin(dist[med], axis=0)
    for ci, mi in enumerate(med):
        assignment[mi] = ci
    objective = float(dist[med].min(axis=0).sum())
    values, avg = silhouette(Y, assignment)
    return ClusterResult(
        k=k,
        medoid_indices=tuple(int(m) for m in medoids),
        assignment=freeze(assignment),
        objective=objective,
        silhouette_per_point=values,
        average_silhouette=avg,
        quality=quality_label(avg),
    )


def auto_k(Y, k_max: int):
    """Silhouette-maximizing cluster count over k = 2 ... k_max.

    Returns (best_k, ClusterResult, quality_label); ties go to the
    smallest k.
    """
    Y = as_float_matrix(Y, "Y")
    n = Y.shape[0]
    k_max = check_count(k_max, 2, n - 1, "k_max")
    best = None
    for k in range(2, k_max + 1):
        result = pam(Y, k)
        if best is None or result.average_silhouette > best.average_silhouette:
            best = result
    return best.k, best, best.quality


class PAMClustering(BaseEstimator, ClusterMixin):
    """k-medoids clustering as a scikit-learn style estimator.

    Parameters
    ----------
    n_clusters : int, default 2
        Number of medoids.

    Attributes
    ----------
    medoid_indices_ : ndarray of shape (n_clusters,)
        Row indices of the medoids, ascending.
    cluster_centers_ : ndarray of shape (n_clusters, n_features)
        The medoid rows themselves.
    labels_ : ndarray of shape (n_samples,)
        Nearest-medoid cluster of every sample.
    inertia_ : float
        Total point-to-nearest-medoid distance.
    silhouette_values_ : ndarray of shape (n_samples,)
    silhouette_score_ : float
    quality_ : str
        strong / reasonable / weak / none per the silhouette thresholds.
    """

    def __init__(self, n_clusters: int = 2):
        self.n_clusters = n_clusters

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        result = pam(X, self.n_clusters)
        self.medoid_indices_ = np.asarray(result.medoid_indices)
        self.cluster_centers_ = X[self.medoid_indices_].copy()
        self.labels_ = np.asarray(result.assignment)
        self.inertia_ = result.objective
        self.silhouette_values_ = result.silhouette_per_point
        self.silhouette_score_ = result.average_silhouette
        self.quality_ = result.quality
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        """Nearest fitted medoid of each row (lowest cluster on ties)."""
        check_is_fitted(self)
        X = check_array(X, dtype=np.float64)
        diff = X[:, None, :] - self.cluster_centers_[None, :, :]
        return np.argmin(np.sqrt(np.einsum("ijk,ijk->ij", diff, diff)), axis=1)
