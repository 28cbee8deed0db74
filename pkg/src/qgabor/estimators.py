"""scikit-learn transformers wrapping the quaternion transforms.

Both transformers take batches of signals shaped ``(n_samples, n1, n2, 4)``
(real ``(n_samples, n1, n2)`` batches are promoted to their scalar part) and
can flatten their output so they slot into a :class:`sklearn.pipeline.Pipeline`.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_grid, check_signal_batch, make_geometry
from .exceptions import PreconditionError
from .gqft import analysis_array, synthesis_array
from .grid import QSignal2D, lp_norm, make_window
from .qft import iqft_array, qft_array

__all__ = ["QuaternionFourierTransformer", "GaborQuaternionTransformer"]


class QuaternionFourierTransformer(TransformerMixin, BaseEstimator):
    """Two-sided quaternion Fourier transform of each sample.

    Parameters
    ----------
    mode : {"discrete", "quadrature"}
        Measure convention of the grid.
    L1, L2 : float, optional
        Box side lengths, required in quadrature mode (``L2`` defaults to ``L1``).
    method : {"fast", "direct"}
        FFT evaluation or the literal double sum.
    grid_shape : tuple of int, optional
        ``(n1, n2)``; needed only for flat 2D input.
    flatten : bool
        Return ``(n_samples, n1 * n2 * 4)`` instead of ``(n_samples, n1, n2, 4)``.
    """

    def __init__(self, mode="discrete", L1=None, L2=None, method="fast", grid_shape=None, flatten=False):
        self.mode = mode
        self.L1 = L1
        self.L2 = L2
        self.method = method
        self.grid_shape = grid_shape
        self.flatten = flatten

    def fit(self, X, y=None):
        X = check_signal_batch(X, self.grid_shape)
        if self.method not in ("fast", "direct"):
            raise PreconditionError(f"unknown method {self.method!r}")
        self.geometry_ = make_geometry(X.shape[1:3], self.mode, self.L1, self.L2)
        self.n_features_in_ = int(np.prod(X.shape[1:]))
        return self

    def _out(self, data):
        return data.reshape(data.shape[0], -1) if self.flatten else data

    def transform(self, X):
        check_is_fitted(self, "geometry_")
        X = check_signal_batch(X, self.geometry_.shape)
        check_grid(X, self.geometry_)
        return self._out(qft_array(X, self.geometry_, self.method))

    def inverse_transform(self, X):
        check_is_fitted(self, "geometry_")
        X = check_signal_batch(X, self.geometry_.shape)
        check_grid(X, self.geometry_)
        return self._out(iqft_array(X, self.geometry_, self.method))


class GaborQuaternionTransformer(TransformerMixin, BaseEstimator):
    """Two-sided Gabor quaternion transform of each sample against one window.

    ``window`` is a kind name (``"gaussian"``, ``"box"``, ``"delta"``) built on
    the fitted grid, or an explicit ``(n1, n2)`` / ``(n1, n2, 4)`` array.  The
    output of :meth:`transform` has shape ``(n_samples, n1, n2, n1, n2, 4)``
    indexed ``(m1, m2, b1, b2)``, or is flattened when ``flatten=True``.
    """

    def __init__(
        self,
        window="gaussian",
        sigma=1.0,
        half_width=1.0,
        normalize_window=True,
        mode="discrete",
        L1=None,
        L2=None,
        grid_shape=None,
        flatten=False,
    ):
        self.window = window
        self.sigma = sigma
        self.half_width = half_width
        self.normalize_window = normalize_window
        self.mode = mode
        self.L1 = L1
        self.L2 = L2
        self.grid_shape = grid_shape
        self.flatten = flatten

    def _build_window(self, geometry) -> QSignal2D:
        if isinstance(self.window, str):
            w = make_window(
                geometry, self.window, sigma=self.sigma, half_width=self.half_width
            )
        elif isinstance(self.window, QSignal2D):
            w = QSignal2D(geometry, self.window.data)
        else:
            arr = check_array(self.window, allow_nd=True, dtype=np.float64)
            if arr.shape == geometry.shape:
                w = QSignal2D.from_real(geometry, arr)
            else:
                w = QSignal2D(geometry, arr)
        norm = lp_norm(w, 2)
        if norm == 0:
            raise PreconditionError("window is identically zero")
        return w * (1.0 / norm) if self.normalize_window else w

    def fit(self, X, y=None):
        X = check_signal_batch(X, self.grid_shape)
        self.geometry_ = make_geometry(X.shape[1:3], self.mode, self.L1, self.L2)
        self.window_ = self._build_window(self.geometry_)
        self.window_norm_sq_ = lp_norm(self.window_, 2) ** 2
        self.n_features_in_ = int(np.prod(X.shape[1:]))
        return self

    def transform(self, X):
        check_is_fitted(self, "window_")
        X = check_signal_batch(X, self.geometry_.shape)
        check_grid(X, self.geometry_)
        G = analysis_array(X, self.window_.data, self.geometry_)
        return G.reshape(G.shape[0], -1) if self.flatten else G

    def inverse_transform(self, G):
        check_is_fitted(self, "window_")
        g = self.geometry_
        G = np.asarray(G, dtype=np.float64)
        field_shape = g.shape * 2 + (4,)
        if G.ndim == 2:
            G = G.reshape((G.shape[0],) + field_shape)
        if G.shape[1:] != field_shape:
            raise PreconditionError(f"expected fields of shape {field_shape}, got {G.shape[1:]}")
        rec = synthesis_array(G, self.window_.data, g) / self.window_norm_sq_
        return rec.reshape(rec.shape[0], -1) if self.flatten else rec

    def energy(self, X):
        """Total field energy ``sum |G|^2 * cell`` per sample."""
        G = self.transform(X)
        G = G.reshape((G.shape[0],) + self.geometry_.shape * 2 + (4,))
        return np.sum(G * G, axis=(1, 2, 3, 4, 5)) * self.geometry_.phase_cell
