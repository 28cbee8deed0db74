"""Region masks over the frequency plane or the (omega, b) phase space."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exceptions import GeometryMismatchError, PreconditionError
from .grid import GridGeometry

__all__ = ["Domain", "RegionMask", "phase_radius", "mask_measure"]


class Domain(str, Enum):
    FREQ2D = "freq2d"
    PHASE4D = "phase4d"


def _freq_coords(geometry: GridGeometry):
    w1, w2 = geometry.freq_axes()
    return np.meshgrid(w1, w2, indexing="ij")


def phase_coords(geometry: GridGeometry):
    """Cell-center coordinates ``(omega1, omega2, b1, b2)`` as four 4D arrays."""
    w1, w2 = geometry.freq_axes()
    b1, b2 = geometry.shift_axes()
    return np.meshgrid(w1, w2, b1, b2, indexing="ij")


def phase_radius(geometry: GridGeometry) -> np.ndarray:
    """Euclidean norm ``|(omega, b)|`` of every phase-space cell center."""
    w1, w2 = geometry.freq_axes()
    b1, b2 = geometry.shift_axes()
    r2 = (
        w1[:, None, None, None] ** 2
        + w2[None, :, None, None] ** 2
        + b1[None, None, :, None] ** 2
        + b2[None, None, None, :] ** 2
    )
    return np.sqrt(r2)


def _shift_radius(geometry: GridGeometry) -> np.ndarray:
    b1, b2 = geometry.shift_axes()
    return np.hypot(b1[:, None], b2[None, :])


@dataclass(frozen=True, eq=False)
class RegionMask:
    """A set of grid cells with the measure convention of its geometry.

    Membership is decided from cell-center coordinates.  ``spec`` is the JSON
    description the mask was built from and is enough to rebuild it.
    """

    geometry: GridGeometry
    domain: Domain
    indicator: np.ndarray = field(repr=False)
    spec: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "domain", Domain(self.domain))
        g = self.geometry
        shape = g.shape if self.domain is Domain.FREQ2D else g.shape + g.shape
        ind = np.asarray(self.indicator, dtype=bool)
        if ind.shape != shape:
            raise ValueError(f"indicator shape {ind.shape} != {shape}")
        ind = ind.copy()
        ind.setflags(write=False)
        object.__setattr__(self, "indicator", ind)

    # -- constructors -------------------------------------------------------

    @classmethod
    def full(cls, geometry, domain=Domain.PHASE4D):
        domain = Domain(domain)
        shape = geometry.shape if domain is Domain.FREQ2D else geometry.shape * 2
        return cls(geometry, domain, np.ones(shape, bool), {"domain": domain.value, "kind": "full"})

    @classmethod
    def empty(cls, geometry, domain=Domain.PHASE4D):
        domain = Domain(domain)
        shape = geometry.shape if domain is Domain.FREQ2D else geometry.shape * 2
        return cls(
            geometry, domain, np.zeros(shape, bool), {"domain": domain.value, "kind": "empty"}
        )

    @classmethod
    def ball(cls, geometry, radius: float, domain=Domain.PHASE4D):
        """Cells whose center lies strictly inside the centered ball."""
        domain = Domain(domain)
        if domain is Domain.FREQ2D:
            w1, w2 = geometry.freq_axes()
            r = np.hypot(w1[:, None], w2[None, :])
        else:
            r = phase_radius(geometry)
        return cls(
            geometry, domain, r < radius, {"domain": domain.value, "kind": "ball", "t": radius}
        )

    @classmethod
    def rect(cls, geometry, bounds, domain=Domain.FREQ2D):
        """Closed box ``lo_d <= coord_d <= hi_d``; one (lo, hi) pair per axis."""
        domain = Domain(domain)
        coords = _freq_coords(geometry) if domain is Domain.FREQ2D else phase_coords(geometry)
        bounds = [tuple(float(v) for v in pair) for pair in bounds]
        if len(bounds) != len(coords):
            raise PreconditionError(
                f"{domain.value} rect needs {len(coords)} bound pairs, got {len(bounds)}"
            )
        ind = np.ones(coords[0].shape, bool)
        for c, (lo, hi) in zip(coords, bounds):
            ind &= (c >= lo) & (c <= hi)
        return cls(
            geometry, domain, ind, {"domain": domain.value, "kind": "rect", "bounds": bounds}
        )

    @classmethod
    def product(cls, S: "RegionMask", R: float):
        """``S x B_R``: frequencies in ``S`` and shifts with ``|b| < R``."""
        if S.domain is not Domain.FREQ2D:
            raise PreconditionError("the S factor of a product mask must be a freq2d mask")
        shifts = _shift_radius(S.geometry) < R
        ind = S.indicator[:, :, None, None] & shifts[None, None, :, :]
        return cls(
            S.geometry,
            Domain.PHASE4D,
            ind,
            {"domain": "phase4d", "kind": "product", "S": S.spec, "R": R},
        )

    @classmethod
    def explicit(cls, geometry, indices, domain=Domain.PHASE4D):
        domain = Domain(domain)
        shape = geometry.shape if domain is Domain.FREQ2D else geometry.shape * 2
        ind = np.zeros(shape, bool)
        idx = np.asarray(indices, dtype=np.int64)
        if idx.size == 0:
            idx = np.zeros((0, len(shape)), dtype=np.int64)
        if idx.ndim != 2 or idx.shape[1] != len(shape):
            raise PreconditionError(f"indices do not address {domain.value} cells")
        if np.any(idx < 0) or np.any(idx >= np.array(shape)):
            raise PreconditionError(f"mask index out of range for grid {shape}")
        ind[tuple(idx.T)] = True
        return cls(
            geometry,
            domain,
            ind,
            {"domain": domain.value, "kind": "explicit", "indices": idx.tolist()},
        )

    @classmethod
    def from_indicator(cls, geometry, indicator, domain=Domain.PHASE4D):
        ind = np.asarray(indicator, dtype=bool)
        return cls.explicit(geometry, np.argwhere(ind).tolist(), domain)

    @classmethod
    def from_spec(cls, spec: dict, geometry: GridGeometry) -> "RegionMask":
        """Build a mask from its JSON description."""
        if not isinstance(spec, dict) or "kind" not in spec:
            raise PreconditionError(f"mask spec must be an object with a 'kind': {spec!r}")
        kind = spec["kind"]
        domain = spec.get("domain", "phase4d")
        if kind == "full":
            return cls.full(geometry, domain)
        if kind == "empty":
            return cls.empty(geometry, domain)
        if kind == "ball":
            radius = spec.get("t", spec.get("radius", spec.get("R")))
            if radius is None:
                raise PreconditionError("ball mask needs a radius 't'")
            return cls.ball(geometry, float(radius), domain)
        if kind == "rect":
            return cls.rect(geometry, spec["bounds"], spec.get("domain", "freq2d"))
        if kind == "product":
            S = spec["S"]
            S = {**S, "domain": S.get("domain", "freq2d")}
            return cls.product(cls.from_spec(S, geometry), float(spec["R"]))
        if kind == "explicit":
            return cls.explicit(geometry, spec.get("indices", []), domain)
        if kind == "complement":
            return cls.from_spec(spec["of"], geometry).complement()
        raise PreconditionError(f"unknown mask kind {kind!r}")

    # -- algebra ----------------------------------------------------------------

    def complement(self) -> "RegionMask":
        return RegionMask(
            self.geometry,
            self.domain,
            ~self.indicator,
            {"domain": self.domain.value, "kind": "complement", "of": self.spec},
        )

    def _check_compatible(self, other):
        if self.geometry != other.geometry or self.domain is not other.domain:
            raise GeometryMismatchError("masks live on different grids")

    def __or__(self, other):
        self._check_compatible(other)
        return RegionMask.from_indicator(self.geometry, self.indicator | other.indicator, self.domain)

    def __and__(self, other):
        self._check_compatible(other)
        return RegionMask.from_indicator(self.geometry, self.indicator & other.indicator, self.domain)

    def issubset(self, other) -> bool:
        self._check_compatible(other)
        return bool(np.all(other.indicator[self.indicator]))

    # -- measures -----------------------------------------------------------------

    @property
    def cell_measure(self) -> float:
        if self.domain is Domain.FREQ2D:
            return self.geometry.freq_cell
        return self.geometry.phase_cell

    @property
    def count(self) -> int:
        return int(self.indicator.sum())

    @property
    def measure(self) -> float:
        return self.count * self.cell_measure

    def phase_indicator(self) -> np.ndarray:
        if self.domain is not Domain.PHASE4D:
            raise PreconditionError("this operation needs a phase4d mask")
        return self.indicator


def mask_measure(mask: RegionMask) -> float:
    """Number of member cells times the cell measure of the mask's domain."""
    return mask.measure
