"""Brute-force reference implementations for verification.

Everything here is written independently of the main modules (numpy
primitives only, no shared solver code) and exists to cross-check them
in tests: exhaustive subset enumeration for archetypoid and medoid
selection, a projected-gradient simplex solver, and naive double-loop
statistics.  These are deliberately slow.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

ENUMERATION_LIMIT = 10 ** 5


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one oracle-versus-candidate comparison."""

    instance: dict
    oracle_value: float
    candidate_value: float
    tolerance: float
    match: bool


def compare(instance: dict, oracle_value: float, candidate_value: float,
            tolerance: float) -> OracleReport:
    return OracleReport(
        instance=dict(instance),
        oracle_value=float(oracle_value),
        candidate_value=float(candidate_value),
        tolerance=float(tolerance),
        match=bool(abs(oracle_value - candidate_value) <= tolerance),
    )


def _check_instance_size(n: int, k: int) -> None:
    if math.comb(n, k) > ENUMERATION_LIMIT:
        raise ValueError(
            f"instance too large: C({n},{k}) = {math.comb(n, k)} subsets "
            f"exceeds the enumeration limit {ENUMERATION_LIMIT}")


def project_rows_to_simplex(A: np.ndarray) -> np.ndarray:
    """Euclidean projection of each row onto the probability simplex."""
    nrow, k = A.shape
    U = np.sort(A, axis=1)[:, ::-1]
    css = np.cumsum(U, axis=1) - 1.0
    idx = np.arange(1, k + 1)
    rho = np.count_nonzero(U - css / idx > 0, axis=1)
    theta = css[np.arange(nrow), rho - 1] / rho
    return np.maximum(A - theta[:, None], 0.0)


def simplex_lstsq_pg(Z: np.ndarray, X: np.ndarray,
                     max_iter: int = 10 ** 4, tol: float = 1e-10):
    """Row-simplex least squares min ||X - A Z||^2 by projected gradient.

    Step size 1/L with L twice the Frobenius norm of Z Z' (a spectral
    upper bound); stops when no entry of A moves more than ``tol``.
    Returns (A, rss).
    """
    Z = np.asarray(Z, dtype=np.float64)
    X = np.asarray(X, dtype=np.float64)
    n, k = X.shape[0], Z.shape[0]
    G = Z @ Z.T
    B = X @ Z.T
    bound = np.linalg.norm(G)
    A = np.full((n, k), 1.0 / k)
    if bound > 0.0:
        step = 1.0 / (2.0 * bound)
        for _ in range(max_iter):
            nxt = project_rows_to_simplex(A - step * 2.0 * (A @ G - B))
            if np.abs(nxt - A).max() < tol:
                A = nxt
                break
            A = nxt
    R = X - A @ Z
    return A, float((R * R).sum())


def _batched_simplex_pg(Zs: np.ndarray, X: np.ndarray,
                        max_iter: int, tol: float) -> np.ndarray:
    """RSS of the per-subset simplex fit for a stack of candidate Z's.

    Same projected-gradient iteration as :func:`simplex_lstsq_pg`, run
    simultaneously for every subset in ``Zs`` (shape (s, k, w)) with its
    own step size.  Returns the rss vector of length s.
    """
    s, k, _ = Zs.shape
    n = X.shape[0]
    G = Zs @ Zs.transpose(0, 2, 1)
    B = np.einsum("nw,skw->snk", X, Zs)
    bound = np.linalg.norm(G, axis=(1, 2))
    step = np.where(bound > 0.0, 1.0 / (2.0 * np.maximum(bound, 1e-300)), 0.0)
    A = np.full((s, n, k), 1.0 / k)
    for _ in range(max_iter):
        grad = 2.0 * (A @ G - B)
        nxt = project_rows_to_simplex(
            (A - step[:, None, None] * grad).reshape(s * n, k)).reshape(s, n, k)
        if np.abs(nxt - A).max() < tol:
            A = nxt
            break
        A = nxt
    R = X[None, :, :] - A @ Zs
    return np.einsum("snw,snw->s", R, R)


def exhaustive_ada(Y, k: int, max_iter: int = 10 ** 4, tol: float = 1e-10,
                   chunk: int = 2048):
    """Globally optimal archetypoid subset by full enumeration.

    Every size-k index subset is scored with the projected-gradient
    simplex solver; the first subset attaining the minimum rss (in
    lexicographic order) wins.  Refuses instances beyond the
    enumeration limit.
    """
    Y = np.asarray(Y, dtype=np.float64)
    n = Y.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    _check_instance_size(n, k)
    best_subset, best_rss = None, math.inf
    combos = itertools.combinations(range(n), k)
    while True:
        block = list(itertools.islice(combos, chunk))
        if not block:
            break
        Zs = Y[np.asarray(block)]
        rss = _batched_simplex_pg(Zs, Y, max_iter, tol)
        i = int(np.argmin(rss))
        if rss[i] < best_rss:
            best_subset, best_rss = block[i], float(rss[i])
    return tuple(best_subset), best_rss


def exhaustive_pam(Y, k: int):
    """Globally optimal medoid subset by full enumeration."""
    Y = np.asarray(Y, dtype=np.float64)
    n = Y.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    _check_instance_size(n, k)
    dist = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            dist[i, j] = math.sqrt(float(((Y[i] - Y[j]) ** 2).sum()))
    best_subset, best_obj = None, math.inf
    for subset in itertools.combinations(range(n), k):
        obj = float(dist[list(subset)].min(axis=0).sum())
        if obj < best_obj:
            best_subset, best_obj = subset, obj
    return tuple(best_subset), best_obj


def naive_covariance(X) -> np.ndarray:
    """Two-pass double-loop sample covariance (divisor r - 1)."""
    X = np.asarray(X, dtype=np.float64)
    r, m = X.shape
    means = [sum(X[i, a] for i in range(r)) / r for a in range(m)]
    S = np.empty((m, m))
    for a in range(m):
        for b in range(m):
            acc = 0.0
            for i in range(r):
                acc += (X[i, a] - means[a]) * (X[i, b] - means[b])
            S[a, b] = acc / (r - 1)
    return S


def naive_pearson(x, y) -> float:
    """Textbook two-pass Pearson correlation."""
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    n = x.size
    mx = sum(x) / n
    my = sum(y) / n
    sxy = sum((x[i] - mx) * (y[i] - my) for i in range(n))
    sxx = sum((v - mx) ** 2 for v in x)
    syy = sum((v - my) ** 2 for v in y)
    return sxy / math.sqrt(sxx * syy)


def sd_of_column_difference(X, i: int, j: int) -> float:
    """Sample standard deviation (divisor r - 1) of column i minus column j."""
    X = np.asarray(X, dtype=np.float64)
    d = [X[t, i] - X[t, j] for t in range(X.shape[0])]
    r = len(d)
    mean = sum(d) / r
    return math.sqrt(sum((v - mean) ** 2 for v in d) / (r - 1))


def naive_silhouette(Y, assignment):
    """Double-loop silhouette; mirrors the standard definition literally."""
    Y = np.asarray(Y, dtype=np.float64)
    labels = list(assignment)
    n = Y.shape[0]
    dist = [[math.sqrt(float(((Y[i] - Y[j]) ** 2).sum())) for j in range(n)]
            for i in range(n)]
    clusters = sorted(set(labels))
    values = []
    for i in range(n):
        own = [j for j in range(n) if labels[j] == labels[i] and j != i]
        if len(clusters) < 2 or not own:
            values.append(0.0)
            continue
        a = sum(dist[i][j] for j in own) / len(own)
        b = math.inf
        for c in clusters:
            if c == labels[i]:
                continue
            members = [j for j in range(n) if labels[j] == c]
            b = min(b, sum(dist[i][j] for j in members) / len(members))
        denom = max(a, b)
        values.append(0.0 if denom == 0.0 else (b - a) / denom)
    return values, sum(values) / n
