"""H-plot embedding: covariance eigendecomposition of a data matrix.

The h-plot embeds the *columns* (variables) of a data matrix: row v of
the coordinate matrix is (sqrt(l_1) q_1[v], ..., sqrt(l_d) q_d[v]) built
from the eigenpairs of the sample covariance matrix.  For the full-rank
embedding, the Euclidean distance between two rows equals the sample
standard deviation of the difference between the two variables.
"""

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import as_float_matrix, check_count, freeze

# relative threshold below which eigenvalues are treated as exact zeros
EIGENVALUE_CLIP = 1e-12


@dataclass(frozen=True, eq=False)
class HPlotResult:
    """Eigenvalues, variable coordinates, and cumulative goodness of fit.

    ``coordinates`` has one row per column of the embedded matrix, in
    column order; ``gof_cumulative[d-1]`` is the fit of the first d
    dimensions (squared-eigenvalue ratio), so the last entry is 1.
    """

    eigenvalues: np.ndarray = field(repr=False)
    coordinates: np.ndarray = field(repr=False)
    dims: int = 2
    gof_cumulative: np.ndarray = field(repr=False, default=None)


def covariance(X) -> np.ndarray:
    """Sample covariance S = Xc' Xc / (r - 1) of the columns of X.

    Column-centered, divisor r - 1; this makes the full-rank embedding
    distance identity exact.  The result is explicitly symmetrized.
    """
    X = as_float_matrix(X)
    r = X.shape[0]
    if r < 2:
        raise ValueError(f"insufficient observations: need >= 2 rows, got {r}")
    Xc = X - X.mean(axis=0)
    S = Xc.T @ Xc / (r - 1)
    return (S + S.T) / 2.0


def sym_eigen(S):
    """Eigendecomposition of a symmetric matrix, deterministically signed.

    Returns (eigenvalues, eigenvectors) with eigenvalues nonincreasing and
    eigenvectors as orthonormal columns.  Each eigenvector is flipped so
    that its largest-magnitude component is positive (first such index on
    ties), making the output unique away from repeated eigenvalues.
    """
    S = as_float_matrix(S, "S")
    m = S.shape[0]
    if S.shape[1] != m:
        raise ValueError(f"S must be square, got shape {S.shape}")
    scale = max(1.0, float(np.abs(S).max())) if S.size else 1.0
    if np.abs(S - S.T).max(initial=0.0) > 1e-10 * scale:
        raise ValueError("contract violation: input matrix is not symmetric")
    w, Q = np.linalg.eigh((S + S.T) / 2.0)
    w = w[::-1].copy()
    Q = Q[:, ::-1].copy()
    for j in range(m):
        i = int(np.argmax(np.abs(Q[:, j])))
        if Q[i, j] < 0:
            Q[:, j] = -Q[:, j]
    return w, Q


def gof(eigenvalues, dims: int) -> float:
    """Goodness of fit of the leading ``dims`` eigenvalues.

    Ratio of the retained squared eigenvalues to the squared total;
    eigenvalues below EIGENVALUE_CLIP relative to the largest are zeroed
    first so noise does not pollute the denominator.
    """
    lam = np.asarray(eigenvalues, dtype=np.float64).ravel().copy()
    if lam.size == 0:
        raise ValueError("eigenvalues must be non-empty")
    if np.any(lam < 0):
        raise ValueError("eigenvalues must be nonnegative")
    if np.any(np.diff(lam) > 1e-12 * max(1.0, float(lam[0]))):
        raise ValueError("eigenvalues must be nonincreasing")
    if lam[0] == 0:
        raise ValueError("goodness of fit undefined for all-zero eigenvalues")
    dims = check_count(dims, 1, lam.size, "dims")
    lam[lam < EIGENVALUE_CLIP * lam[0]] = 0.0
    sq = lam ** 2
    return float(sq[:dims].sum() / sq.sum())


def hplot(X, dims: int = 2) -> HPlotResult:
    """Embed the columns of X into ``dims`` dimensions.

    Parameters
    ----------
    X : array-like, shape (r, m)
        Data matrix with r >= 2 observations of m variables.
    dims : int
        Embedding dimension, 1 <= dims <= m.

    Returns
    -------
    HPlotResult
        Coordinates (m x dims, rows in column order of X), the full
        clamped spectrum, and the cumulative goodness-of-fit curve.
    """
    X = as_float_matrix(X)
    m = X.shape[1]
    dims = check_count(dims, 1, m, "dims")
    S = covariance(X)
    w, Q = sym_eigen(S)
    w = np.where(w < 0.0, 0.0, w)
    if w[0] <= 0.0:
        raise ValueError("degenerate configuration: data has zero total variance")
    w = np.where(w < EIGENVALUE_CLIP * w[0], 0.0, w)
    coords = Q[:, :dims] * np.sqrt(w[:dims])
    cum = np.cumsum(w ** 2)
    return HPlotResult(
        eigenvalues=freeze(w),
        coordinates=freeze(coords),
        dims=dims,
        gof_cumulative=freeze(cum / cum[-1]),
    )


class HPlotEmbedding(BaseEstimator):
    """Variable embedding via covariance eigendecomposition.

    Parameters
    ----------
    n_dims : int, default 2
        Dimension of the embedding.

    Attributes
    ----------
    embedding_ : ndarray, shape (n_features, n_dims)
        Coordinates of the variables, in input column order.
    eigenvalues_ : ndarray
        Full nonincreasing covariance spectrum (clamped at zero).
    gof_ : ndarray, shape (n_dims,)
        Cumulative goodness of fit of the leading dimensions.
    """

    def __init__(self, n_dims: int = 2):
        self.n_dims = n_dims

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64, ensure_min_samples=2)
        result = hplot(X, self.n_dims)
        self.result_ = result
        self.embedding_ = result.coordinates
        self.eigenvalues_ = result.eigenvalues
        self.gof_ = result.gof_cumulative[: result.dims]
        self.n_features_in_ = X.shape[1]
        return self

    def fit_transform(self, X, y=None):
        """Fit and return the variable coordinates."""
        return self.fit(X).embedding_

    def score(self, X=None, y=None) -> float:
        """Goodness of fit of the fitted embedding dimension."""
        check_is_fitted(self)
        return float(self.gof_[-1])
