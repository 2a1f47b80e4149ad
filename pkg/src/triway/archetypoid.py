"""Archetypoid analysis: extreme representative rows of a profile matrix.

Each observation is approximated by a convex combination of k selected
data rows (the archetypoids).  The combination weights are found by
nonnegative least squares on a penalty-augmented system that enforces
the unit-sum constraint, and the selection is optimized by a greedy
BUILD phase followed by best-improvement SWAP exchanges.  There is no
randomness anywhere: identical inputs give identical results.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import nnls
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import as_float_matrix, check_count, freeze

# weight of the unit-sum penalty row in the augmented NNLS system
PENALTY_FACTOR = 200.0


@dataclass(frozen=True, eq=False)
class AdaResult:
    """Selected archetypoid rows, mixture weights, and the fit trace."""

    k: int
    indices: tuple
    alphas: np.ndarray = field(repr=False)
    rss: float = 0.0
    trace: tuple = ()

    def to_record(self, labels) -> dict:
        """JSON record ``{k, archetypoids, alphas, rss, trace}``."""
        return {
            "k": self.k,
            "archetypoids": [labels[i] for i in self.indices],
            "alphas": [[float(v) for v in row] for row in self.alphas],
            "rss": float(self.rss),
            "trace": [float(v) for v in self.trace],
        }


def _mixture_weights(X: np.ndarray, Z: np.ndarray):
    """Simplex-constrained weights of each row of X over the rows of Z.

    Solves NNLS on [Z' ; C 1'] with a large constant C appended to the
    target, then renormalizes each row to an exact unit sum.  Returns
    (alphas, rss) with rss computed from the renormalized weights.
    """
    k = Z.shape[0]
    C = PENALTY_FACTOR * (1.0 + max(np.abs(X).max(initial=0.0),
                                    np.abs(Z).max(initial=0.0)))
    A = np.vstack([Z.T, np.full((1, k), C)])
    alphas = np.empty((X.shape[0], k))
    rss = 0.0
    for i, x in enumerate(X):
        a, _ = nnls(A, np.append(x, C))
        total = a.sum()
        if total <= 0.0:  # unreachable with C > 0; keep the row feasible
            a = np.zeros(k)
            a[int(np.argmin(np.linalg.norm(Z - x, axis=1)))] = 1.0
        else:
            a = a / total
        alphas[i] = a
        resid = x - a @ Z
        rss += float(resid @ resid)
    return alphas, rss


def solve_alphas(Y, archetypoid_indices):
    """Optimal simplex weights of every row of Y over the selected rows.

    Returns (alphas, rss) where ``alphas[i]`` minimizes the squared
    reconstruction error of row i over the probability simplex and
    ``rss`` is the summed minimum.
    """
    Y = as_float_matrix(Y, "Y")
    n = Y.shape[0]
    indices = [int(i) for i in archetypoid_indices]
    if len(set(indices)) != len(indices):
        raise ValueError("duplicate archetypoid indices")
    if not 1 <= len(indices) <= n:
        raise ValueError(f"need between 1 and {n} archetypoids, got {len(indices)}")
    for i in indices:
        if not 0 <= i < n:
            raise ValueError(f"archetypoid index {i} out of range [0, {n})")
    return _mixture_weights(Y, Y[np.asarray(indices)])


def ada(Y, k: int) -> AdaResult:
    """Select k archetypoids of Y by greedy BUILD plus best-improvement SWAP.

    BUILD adds, one at a time, the row whose inclusion most reduces the
    residual sum of squares (lowest index on ties).  SWAP then repeatedly
    applies the single best (selected, unselected) exchange that strictly
    reduces the RSS, until none exists.  Deterministic throughout.
    """
    Y = as_float_matrix(Y, "Y")
    n = Y.shape[0]
    k = check_count(k, 1, n, "k")

    selected = []
    for _ in range(k):
        best_idx, best_rss = None, math.inf
        for c in range(n):
            if c in selected:
                continue
            _, rss_c = solve_alphas(Y, selected + [c])
            if rss_c < best_rss:
                best_idx, best_rss = c, rss_c
        selected.append(best_idx)
    selected.sort()

    _, current = solve_alphas(Y, selected)
    trace = [current]
    while True:
        best_set, best_rss = None, current
        for out in selected:
            for cin in range(n):
                if cin in selected:
                    continue
                candidate = sorted(set(selected) - {out} | {cin})
                _, rss_c = solve_alphas(Y, candidate)
                if rss_c < best_rss:
                    best_set, best_rss = candidate, rss_c
        if best_set is None:
            break
        selected, current = best_set, best_rss
        trace.append(current)

    alphas, rss = solve_alphas(Y, selected)
    return AdaResult(k=k, indices=tuple(selected), alphas=freeze(alphas),
                     rss=rss, trace=tuple(trace))


def rss_curve(Y, k_max: int):
    """RSS of the optimized selection for every k = 1 ... k_max."""
    Y = as_float_matrix(Y, "Y")
    k_max = check_count(k_max, 1, Y.shape[0], "k_max")
    return [(k, ada(Y, k).rss) for k in range(1, k_max + 1)]


@dataclass(frozen=True)
class ElbowResult:
    """Chosen k plus a flag raised when the curve has no usable bend."""

    k: int
    no_elbow: bool = False


def elbow(curve) -> ElbowResult:
    """Pick the curve point furthest from the chord joining its endpoints.

    ``curve`` is a sequence of (k, rss) pairs with strictly increasing k
    and length >= 3.  Ties go to the smallest k.  A flat or linear curve
    has no bend: the smallest k is returned with ``no_elbow=True``.
    """
    pts = [(float(k), float(r)) for k, r in curve]
    if len(pts) < 3:
        raise ValueError(f"elbow needs a curve of length >= 3, got {len(pts)}")
    ks = [p[0] for p in pts]
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError("curve k values must be strictly increasing")
    (k0, r0), (k1, r1) = pts[0], pts[-1]
    dx, dy = k1 - k0, r1 - r0
    chord = math.hypot(dx, dy)
    dists = [abs(dx * (r0 - r) - (k0 - k) * dy) / chord for k, r in pts]
    scale = max(1.0, abs(r0), abs(r1), abs(dy))
    best = max(range(len(pts)), key=lambda i: (dists[i], -pts[i][0]))
    if dists[best] <= 1e-9 * scale:
        return ElbowResult(k=int(pts[0][0]), no_elbow=True)
    return ElbowResult(k=int(pts[best][0]), no_elbow=False)


class Archetypoids(BaseEstimator, TransformerMixin):
    """Archetypoid analysis as a scikit-learn style estimator.

    Parameters
    ----------
    n_archetypoids : int, default 3
        Number of data rows to select.

    Attributes
    ----------
    archetypoid_indices_ : ndarray of shape (n_archetypoids,)
        Row indices of the selected archetypoids, ascending.
    archetypoids_ : ndarray of shape (n_archetypoids, n_features)
        The selected rows themselves.
    alphas_ : ndarray of shape (n_samples, n_archetypoids)
        Simplex mixture weights reconstructing each sample.
    rss_ : float
        Residual sum of squares of the reconstruction.
    trace_ : ndarray
        RSS after BUILD and after each applied SWAP exchange.
    """

    def __init__(self, n_archetypoids: int = 3):
        self.n_archetypoids = n_archetypoids

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        result = ada(X, self.n_archetypoids)
        self.archetypoid_indices_ = np.asarray(result.indices)
        self.archetypoids_ = X[self.archetypoid_indices_].copy()
        self.alphas_ = result.alphas
        self.rss_ = result.rss
        self.trace_ = np.asarray(result.trace)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        """Simplex mixture weights of new rows over the fitted archetypoids."""
        check_is_fitted(self)
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.archetypoids_.shape[1]:
            raise ValueError(
                f"X has {X.shape[1]} features, expected "
                f"{self.archetypoids_.shape[1]}")
        alphas, _ = _mixture_weights(X, self.archetypoids_)
        return alphas
