"""Small input-validation helpers shared across modules."""

import numpy as np


def as_float_matrix(X, name: str = "X") -> np.ndarray:
    """Coerce to a 2-D float64 array, rejecting non-finite entries."""
    A = np.asarray(X, dtype=np.float64)
    if A.ndim != 2:
        raise ValueError(f"{name} must be a 2-D matrix, got shape {A.shape}")
    if A.size and not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains non-finite entries")
    return A


def as_float_vector(x, name: str = "x") -> np.ndarray:
    A = np.asarray(x, dtype=np.float64).ravel()
    if A.size and not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains non-finite entries")
    return A


def check_count(k, lo: int, hi: int, name: str = "k") -> int:
    """Validate an integer count in the closed range [lo, hi]."""
    ki = int(k)
    if ki != k:
        raise ValueError(f"{name} must be an integer, got {k!r}")
    if not lo <= ki <= hi:
        raise ValueError(f"{name} must be in [{lo}, {hi}], got {ki}")
    return ki


def freeze(a: np.ndarray) -> np.ndarray:
    """Mark an array read-only (results are immutable once built)."""
    a.setflags(write=False)
    return a
