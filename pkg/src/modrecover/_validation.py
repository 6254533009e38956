"""Input validation helpers shared by the estimators."""

import numpy as np
from sklearn.utils.validation import check_array


def check_modulo_samples(y, name="y"):
    """Return ``y`` as a finite 1-D float array with entries in [0, 1).

    Column vectors of shape ``(n, 1)`` are accepted and flattened.
    """
    y = check_array(np.asarray(y, dtype=float).reshape(-1, 1) if np.ndim(y) <= 1 else y,
                    ensure_2d=True, dtype=float, input_name=name)
    if y.shape[1] != 1:
        raise ValueError(f"{name} must be 1-D or a single column, got shape {y.shape}")
    y = y[:, 0]
    if np.any(y < 0) or np.any(y >= 1):
        raise ValueError(f"{name} must contain modulo-1 values in [0, 1)")
    return y


def check_unit_points(X, name="X"):
    """Return evaluation points as a 1-D float array inside [0, 1]."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 2 and X.shape[1] == 1:
        X = X[:, 0]
    if X.ndim != 1:
        raise ValueError(f"{name} must be 1-D or a single column, got shape {X.shape}")
    X = check_array(X.reshape(-1, 1), dtype=float, input_name=name)[:, 0]
    if np.any(X < 0) or np.any(X > 1):
        raise ValueError(f"{name} must lie in [0, 1]")
    return X
