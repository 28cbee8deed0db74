"""Two-sided Gabor quaternion Fourier transform on periodic grids.

For each shift index ``b`` the field slice is the quaternion transform of
``f * conj(phi_b)`` with ``phi_b[n] = phi[(n - b) mod N]``.  Fields are stored
as arrays of shape ``(n1, n2, n1, n2, 4)`` indexed ``(m1, m2, b1, b2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import GeometryMismatchError, ZeroWindowError
from .grid import GridGeometry, QSignal2D, lp_norm, shifted_stack
from .quaternion import as_quaternion_array, qabs2, qconj, qmul
from .qft import iqft_array, qft_array

__all__ = [
    "GaborField4D",
    "gqft_forward",
    "gqft_inverse",
    "gabor_energy",
    "random_field",
    "analysis_array",
    "synthesis_array",
]


@dataclass(frozen=True, eq=False)
class GaborField4D:
    """Phase-space field ``G[m1, m2, b1, b2]`` with the window energy it was built with."""

    geometry: GridGeometry
    window_norm_sq: float
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        g = self.geometry
        data = as_quaternion_array(self.data)
        expected = (g.n1, g.n2, g.n1, g.n2, 4)
        if data.shape != expected:
            raise ValueError(f"field data shape {data.shape} != {expected}")
        data = np.array(data, dtype=np.float64, copy=True)
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "window_norm_sq", float(self.window_norm_sq))

    @property
    def cell_measure(self) -> float:
        return self.geometry.phase_cell

    def with_data(self, data) -> "GaborField4D":
        return GaborField4D(self.geometry, self.window_norm_sq, data)

    def modulus(self) -> np.ndarray:
        return np.sqrt(qabs2(self.data))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(qabs2(self.data)) * self.cell_measure))

    def inner(self, other: "GaborField4D") -> float:
        """Real inner product ``Re sum F conj(G) * cell``."""
        return float(np.vdot(self.data.ravel(), other.data.ravel()) * self.cell_measure)


def _check_pair(f: QSignal2D, window: QSignal2D) -> float:
    if f.geometry != window.geometry:
        raise GeometryMismatchError(f"signal {f.geometry} and window {window.geometry} differ")
    norm_sq = lp_norm(window, 2) ** 2
    if norm_sq == 0:
        raise ZeroWindowError("window is identically zero")
    return norm_sq


def analysis_array(
    f: np.ndarray, window: np.ndarray, geometry: GridGeometry, method: str = "fast"
) -> np.ndarray:
    """Array-level forward transform; ``f`` may carry leading batch axes."""
    windowed = qmul(f[..., None, None, :, :, :], qconj(shifted_stack(window)))
    spec = qft_array(windowed, geometry, method)  # (..., b1, b2, m1, m2, 4)
    return np.moveaxis(spec, (-5, -4), (-3, -2))


def synthesis_array(G: np.ndarray, window: np.ndarray, geometry: GridGeometry) -> np.ndarray:
    """Unnormalized synthesis ``sum_b iqft(G[., b]) * phi_b * cell_b``.

    This is the real adjoint of :func:`analysis_array`.
    """
    slices = np.moveaxis(G, (-3, -2), (-5, -4))  # (..., b1, b2, m1, m2, 4)
    local = qmul(iqft_array(slices, geometry), shifted_stack(window))
    return local.sum(axis=(-5, -4)) * geometry.spatial_cell


def gqft_forward(f: QSignal2D, window: QSignal2D) -> GaborField4D:
    norm_sq = _check_pair(f, window)
    return GaborField4D(f.geometry, norm_sq, analysis_array(f.data, window.data, f.geometry))


def gqft_inverse(G: GaborField4D, window: QSignal2D) -> QSignal2D:
    """Reconstruct ``f`` from its field; ``window`` must be the analysis window."""
    if G.geometry != window.geometry:
        raise GeometryMismatchError(f"field {G.geometry} and window {window.geometry} differ")
    norm_sq = lp_norm(window, 2) ** 2
    if norm_sq == 0:
        raise ZeroWindowError("window is identically zero")
    if abs(norm_sq - G.window_norm_sq) > 1e-9 * G.window_norm_sq:
        raise GeometryMismatchError(
            f"window energy {norm_sq!r} differs from the field's {G.window_norm_sq!r}"
        )
    data = synthesis_array(G.data, window.data, G.geometry) / G.window_norm_sq
    return QSignal2D(G.geometry, data)


def gabor_energy(G: GaborField4D, mask=None) -> float:
    """``sum |G|^2 * cell`` over the cells of ``mask`` (all cells if None)."""
    dens = qabs2(G.data)
    if mask is not None:
        if mask.geometry != G.geometry:
            raise GeometryMismatchError("mask and field geometries differ")
        dens = dens[mask.phase_indicator()]
    return float(np.sum(dens) * G.cell_measure)


def random_field(
    geometry: GridGeometry, rng: np.random.Generator, window_norm_sq: float = 1.0
) -> GaborField4D:
    shape = (geometry.n1, geometry.n2, geometry.n1, geometry.n2, 4)
    return GaborField4D(geometry, window_norm_sq, rng.standard_normal(shape))
