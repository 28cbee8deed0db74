"""Input validation helpers for the estimator layer."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import PreconditionError
from .grid import GridGeometry


def check_signal_batch(X, grid_shape=None) -> np.ndarray:
    """Coerce ``X`` to a float array of shape ``(n_samples, n1, n2, 4)``.

    Accepted layouts: ``(n_samples, n1, n2, 4)`` quaternion batches,
    ``(n_samples, n1, n2)`` real batches (scalar part only), and flat
    ``(n_samples, n1 * n2 * 4)`` matrices when ``grid_shape`` is given.
    """
    X = check_array(X, allow_nd=True, dtype=np.float64, ensure_all_finite=False)
    if X.ndim == 2:
        if grid_shape is None:
            raise PreconditionError("2D input needs grid_shape=(n1, n2) to be unflattened")
        n1, n2 = grid_shape
        if X.shape[1] != n1 * n2 * 4:
            raise PreconditionError(
                f"expected {n1 * n2 * 4} features for grid {grid_shape}, got {X.shape[1]}"
            )
        return X.reshape(X.shape[0], n1, n2, 4)
    if X.ndim == 3:
        out = np.zeros(X.shape + (4,))
        out[..., 0] = X
        return out
    if X.ndim == 4 and X.shape[-1] == 4:
        return X
    raise PreconditionError(f"cannot interpret input of shape {X.shape} as quaternion signals")


def check_grid(X: np.ndarray, geometry: GridGeometry):
    if X.shape[1:3] != geometry.shape:
        raise PreconditionError(f"signals are {X.shape[1:3]}, estimator was fitted on {geometry.shape}")


def make_geometry(shape, mode, L1, L2) -> GridGeometry:
    n1, n2 = shape
    if mode == "discrete":
        return GridGeometry(n1, n2, mode)
    if L1 is None:
        raise PreconditionError("quadrature mode needs L1")
    return GridGeometry(n1, n2, mode, L1, L2 if L2 is not None else L1)
