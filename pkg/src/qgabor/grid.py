"""Quaternion-valued signals sampled on 2D grids."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exceptions import GeometryMismatchError, PreconditionError, ZeroWindowError
from .quaternion import Quaternion, as_quaternion_array, qabs, qconj, qmul

__all__ = [
    "Mode",
    "GridGeometry",
    "QSignal2D",
    "QSpectrum2D",
    "lp_norm",
    "inner_product",
    "circular_shift",
    "make_window",
    "from_rgb_image",
    "to_rgb_image",
    "random_signal",
]


class Mode(str, Enum):
    """Measure convention of a grid.

    ``DISCRETE`` uses counting measure and the unitary DFT normalization, so
    Plancherel and inversion hold to rounding.  ``QUADRATURE`` treats the
    samples as a midpoint Riemann sum over a box ``[-L1/2, L1/2) x [-L2/2, L2/2)``.
    """

    DISCRETE = "discrete"
    QUADRATURE = "quadrature"


def _wrapped_index(n: int) -> np.ndarray:
    # signed representative of each index modulo n, in [-n//2, n - n//2)
    return (np.arange(n) + n // 2) % n - n // 2


@dataclass(frozen=True)
class GridGeometry:
    n1: int
    n2: int
    mode: Mode = Mode.DISCRETE
    L1: float | None = None
    L2: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        for name in ("n1", "n2"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.mode is Mode.QUADRATURE:
            if self.L1 is None or self.L2 is None:
                raise ValueError("quadrature mode needs box side lengths L1 and L2")
            if not (self.L1 > 0 and self.L2 > 0):
                raise ValueError("box side lengths must be positive")
            object.__setattr__(self, "L1", float(self.L1))
            object.__setattr__(self, "L2", float(self.L2))
        else:
            object.__setattr__(self, "L1", None)
            object.__setattr__(self, "L2", None)

    @classmethod
    def discrete(cls, n1: int, n2: int | None = None) -> "GridGeometry":
        return cls(n1, n1 if n2 is None else n2, Mode.DISCRETE)

    @classmethod
    def quadrature(
        cls, n1: int, n2: int | None = None, L1: float = 1.0, L2: float | None = None
    ) -> "GridGeometry":
        return cls(
            n1, n1 if n2 is None else n2, Mode.QUADRATURE, L1, L1 if L2 is None else L2
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n1, self.n2)

    @property
    def steps(self) -> tuple[float, float]:
        """Spatial steps ``(h1, h2)``; 1 in discrete mode."""
        if self.mode is Mode.DISCRETE:
            return (1.0, 1.0)
        return (self.L1 / self.n1, self.L2 / self.n2)

    @property
    def spatial_cell(self) -> float:
        h1, h2 = self.steps
        return h1 * h2

    @property
    def freq_cell(self) -> float:
        if self.mode is Mode.DISCRETE:
            return 1.0
        return 1.0 / (self.L1 * self.L2)

    @property
    def phase_cell(self) -> float:
        """Measure of one (omega, b) cell: 1, or h1 h2 / (L1 L2) = 1 / (n1 n2)."""
        if self.mode is Mode.DISCRETE:
            return 1.0
        # written without L so that n1*n2 cells have measure exactly 1
        return 1.0 / (self.n1 * self.n2)

    @property
    def qft_scale(self) -> float:
        """Factor in front of the forward transform sum."""
        if self.mode is Mode.DISCRETE:
            return 1.0 / math.sqrt(self.n1 * self.n2)
        return self.spatial_cell

    @property
    def iqft_scale(self) -> float:
        if self.mode is Mode.DISCRETE:
            return 1.0 / math.sqrt(self.n1 * self.n2)
        return self.freq_cell

    def spatial_axes(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-axis coordinates of the spatial samples.

        Quadrature: cell centers ``-L/2 + h (n + 1/2)``.  Discrete: signed
        indices, so index 0 sits at the origin of the periodic grid.
        """
        if self.mode is Mode.DISCRETE:
            return (
                _wrapped_index(self.n1).astype(float),
                _wrapped_index(self.n2).astype(float),
            )
        h1, h2 = self.steps
        return (
            -self.L1 / 2 + h1 * (np.arange(self.n1) + 0.5),
            -self.L2 / 2 + h2 * (np.arange(self.n2) + 0.5),
        )

    def freq_axes(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-axis frequency coordinates of the spectrum samples.

        Quadrature: the centered lattice ``(m - n/2) / L``.  Discrete: signed
        frequency index in FFT storage order.
        """
        if self.mode is Mode.DISCRETE:
            return (
                _wrapped_index(self.n1).astype(float),
                _wrapped_index(self.n2).astype(float),
            )
        return (
            (np.arange(self.n1) - self.n1 / 2) / self.L1,
            (np.arange(self.n2) - self.n2 / 2) / self.L2,
        )

    def shift_axes(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-axis displacement of the window translate stored at shift index k.

        Shift index ``k`` is the circular shift by ``k`` cells, reported as the
        signed displacement ``k`` wrapped into ``[-n/2, n/2)`` times the step.
        """
        h1, h2 = self.steps
        return (_wrapped_index(self.n1) * h1, _wrapped_index(self.n2) * h2)

    def spatial_radius(self) -> np.ndarray:
        x1, x2 = self.spatial_axes()
        return np.hypot(x1[:, None], x2[None, :])

    def to_header(self) -> dict:
        return {
            "n1": self.n1,
            "n2": self.n2,
            "mode": self.mode.value,
            "L1": self.L1,
            "L2": self.L2,
        }

    @classmethod
    def from_header(cls, header: dict) -> "GridGeometry":
        return cls(
            header["n1"], header["n2"], Mode(header["mode"]), header.get("L1"), header.get("L2")
        )


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.float64, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class QSignal2D:
    """An ``n1 x n2`` grid of quaternions with its geometry.

    The data array has shape ``(n1, n2, 4)`` and is read-only.
    """

    geometry: GridGeometry
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        data = as_quaternion_array(self.data)
        if data.shape != (self.geometry.n1, self.geometry.n2, 4):
            raise ValueError(
                f"data shape {data.shape} does not match geometry "
                f"{(self.geometry.n1, self.geometry.n2, 4)}"
            )
        object.__setattr__(self, "data", _readonly(data))

    @property
    def cell_measure(self) -> float:
        return self.geometry.spatial_cell

    @classmethod
    def zeros(cls, geometry: GridGeometry):
        return cls(geometry, np.zeros((geometry.n1, geometry.n2, 4)))

    @classmethod
    def from_real(cls, geometry: GridGeometry, values) -> "QSignal2D":
        values = np.asarray(values, dtype=np.float64)
        data = np.zeros(values.shape + (4,))
        data[..., 0] = values
        return cls(geometry, data)

    def with_data(self, data):
        return type(self)(self.geometry, data)

    def __add__(self, other):
        _check_same_geometry(self, other)
        return self.with_data(self.data + other.data)

    def __sub__(self, other):
        _check_same_geometry(self, other)
        return self.with_data(self.data - other.data)

    def __mul__(self, c):
        """Right multiplication by a real scalar or a :class:`Quaternion`."""
        if isinstance(c, Quaternion):
            return self.with_data(qmul(self.data, c.as_array()))
        return self.with_data(self.data * float(c))

    def __rmul__(self, c):
        if isinstance(c, Quaternion):
            return self.with_data(qmul(c.as_array(), self.data))
        return self.with_data(self.data * float(c))

    def conj(self):
        return self.with_data(qconj(self.data))

    def component(self, c: int) -> np.ndarray:
        """Real-valued component ``c`` (0 scalar, 1 i, 2 j, 3 k)."""
        return self.data[..., c].copy()

    def nonzero_components(self) -> list[int]:
        return [c for c in range(4) if np.any(self.data[..., c] != 0)]

    def modulus(self) -> np.ndarray:
        return qabs(self.data)


class QSpectrum2D(QSignal2D):
    """A quaternion spectrum indexed by frequency samples of its geometry."""

    @property
    def cell_measure(self) -> float:
        return self.geometry.freq_cell


def _check_same_geometry(f: QSignal2D, g: QSignal2D):
    if f.geometry != g.geometry:
        raise GeometryMismatchError(f"geometry mismatch: {f.geometry} vs {g.geometry}")


def lp_norm(f: QSignal2D, p: float = 2.0) -> float:
    """L^p norm ``(sum |f|^p * cell)^(1/p)``; ``p = inf`` gives the max modulus."""
    if not p >= 1:
        raise PreconditionError(f"L^p norms need p >= 1, got {p!r}")
    mod = qabs(f.data).ravel()
    if math.isinf(p):
        return float(mod.max(initial=0.0))
    if p == 2:
        return math.sqrt(float(np.sum(mod * mod)) * f.cell_measure)
    return float(np.sum(mod**p) * f.cell_measure) ** (1.0 / p)


def inner_product(f: QSignal2D, g: QSignal2D) -> Quaternion:
    """``sum f[n] * conj(g[n]) * cell`` as a quaternion."""
    _check_same_geometry(f, g)
    if type(f) is not type(g):
        raise GeometryMismatchError("cannot pair a signal with a spectrum")
    prods = qmul(f.data, qconj(g.data)).reshape(-1, 4)
    return Quaternion.from_array(prods.sum(axis=0) * f.cell_measure)


def circular_shift(f: QSignal2D, b) -> QSignal2D:
    """Periodic translate: ``out[n] = f[(n - b) mod (n1, n2)]``."""
    b1, b2 = (int(v) for v in b)
    return f.with_data(np.roll(f.data, shift=(b1, b2), axis=(0, 1)))


def shifted_stack(data: np.ndarray) -> np.ndarray:
    """All circular translates of an ``(n1, n2, 4)`` array.

    Returns shape ``(n1, n2, n1, n2, 4)`` indexed ``(b1, b2, x1, x2)`` with
    ``out[b, x] = data[(x - b) mod n]``.
    """
    n1, n2 = data.shape[:2]
    i1 = (np.arange(n1)[None, :] - np.arange(n1)[:, None]) % n1  # (b1, x1)
    i2 = (np.arange(n2)[None, :] - np.arange(n2)[:, None]) % n2  # (b2, x2)
    return data[i1[:, None, :, None], i2[None, :, None, :]]


def make_window(
    geometry: GridGeometry,
    kind: str = "gaussian",
    *,
    sigma: float = 1.0,
    half_width=None,
    index=None,
    radius: float | None = None,
    normalize: bool = False,
) -> QSignal2D:
    """Build a real-valued window on ``geometry``.

    kind
        ``"gaussian"``: ``exp(-pi |x|^2 / sigma^2)`` at the sample coordinates.
        ``"box"``: indicator of ``|x_d| <= half_width_d`` (scalar or pair).
        ``"delta"``: one-cell spike at ``index``; defaults to the cell nearest
        the origin.
    radius
        If given, zero every cell with ``|x| >= radius`` (truncated window).
    """
    x1, x2 = geometry.spatial_axes()
    kind = kind.lower()
    if kind == "gaussian":
        if not sigma > 0:
            raise PreconditionError("gaussian width sigma must be positive")
        r2 = x1[:, None] ** 2 + x2[None, :] ** 2
        values = np.exp(-np.pi * r2 / sigma**2)
    elif kind == "box":
        if half_width is None:
            raise PreconditionError("box window needs half_width")
        hw1, hw2 = np.broadcast_to(np.asarray(half_width, dtype=float), (2,))
        values = ((np.abs(x1)[:, None] <= hw1) & (np.abs(x2)[None, :] <= hw2)).astype(float)
    elif kind == "delta":
        values = np.zeros(geometry.shape)
        if index is None:
            index = np.unravel_index(np.argmin(geometry.spatial_radius()), geometry.shape)
        values[tuple(int(v) for v in index)] = 1.0
    else:
        raise PreconditionError(f"unknown window kind {kind!r}")
    if radius is not None:
        values = np.where(geometry.spatial_radius() < radius, values, 0.0)
    window = QSignal2D.from_real(geometry, values)
    norm = lp_norm(window, 2)
    if norm == 0:
        raise ZeroWindowError(f"{kind} window is identically zero on this grid")
    if normalize:
        window = window * (1.0 / norm)
    return window


def from_rgb_image(pixels, geometry: GridGeometry | None = None) -> QSignal2D:
    """Encode an ``(n1, n2, 3)`` uint8 image as ``i R + j G + k B`` over 255."""
    pixels = np.asarray(pixels)
    if pixels.ndim != 3 or pixels.shape[2] != 3:
        raise ValueError(f"expected an (n1, n2, 3) image, got shape {pixels.shape}")
    if geometry is None:
        geometry = GridGeometry.discrete(*pixels.shape[:2])
    data = np.zeros(pixels.shape[:2] + (4,))
    data[..., 1:] = pixels.astype(np.float64) / 255.0
    return QSignal2D(geometry, data)


def to_rgb_image(f: QSignal2D) -> np.ndarray:
    """Inverse of :func:`from_rgb_image`; the scalar part is dropped."""
    return np.clip(np.rint(f.data[..., 1:] * 255.0), 0, 255).astype(np.uint8)


def random_signal(
    geometry: GridGeometry, rng: np.random.Generator, components=(0, 1, 2, 3)
) -> QSignal2D:
    """Standard normal samples in the selected real components."""
    data = np.zeros((geometry.n1, geometry.n2, 4))
    for c in components:
        data[..., c] = rng.standard_normal(geometry.shape)
    return QSignal2D(geometry, data)
