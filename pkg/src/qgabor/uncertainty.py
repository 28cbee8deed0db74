"""Numerical checks of the concentration and local uncertainty inequalities.

Every checker returns a :class:`CheckReport` comparing a left side against a
right side computed in the same discrete measure, so quadrature error never
enters the comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    MaskMeasureError,
    ModeError,
    NoAdmissibleRadiusError,
    NormalizationError,
    PreconditionError,
)
from .gqft import GaborField4D, gabor_energy, gqft_forward
from .grid import GridGeometry, Mode, QSignal2D, lp_norm
from .masks import RegionMask, mask_measure, phase_radius
from .quaternion import qabs2
from .qft import hy_norm, q_modulus_spectrum

__all__ = [
    "CheckReport",
    "concentration_epsilon",
    "check_concentration_lower_bound",
    "check_local_uncertainty",
    "local_uncertainty_sides",
    "check_weighted_bound",
    "weighted_moment",
    "check_young_sup",
    "check_hausdorff_young",
]

RTOL = 1e-9


def _finite_or_none(x):
    return float(x) if math.isfinite(x) else None


@dataclass
class CheckReport:
    """Outcome of one inequality or identity check.

    ``passed`` is ``lhs <= rhs * (1 + rtol) + atol``.  Report-only checks set
    ``asserted=False``; their verdict is informational.
    """

    name: str
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    params: dict = field(default_factory=dict)
    asserted: bool = True

    @classmethod
    def compare(cls, name, lhs, rhs, *, rtol=RTOL, atol=0.0, params=None, asserted=True):
        lhs, rhs = float(lhs), float(rhs)
        if rhs > 0:
            ratio = lhs / rhs
        else:
            ratio = 0.0 if lhs == 0 else math.inf
        params = dict(params or {})
        params.setdefault("rtol", rtol)
        params.setdefault("atol", atol)
        passed = bool(lhs <= rhs * (1 + rtol) + atol)
        return cls(name, lhs, rhs, ratio, passed, params, asserted)

    @property
    def failed(self) -> bool:
        return self.asserted and not self.passed

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _finite_or_none(self.lhs),
            "rhs": _finite_or_none(self.rhs),
            "ratio": _finite_or_none(self.ratio),
            "pass": self.passed,
            "asserted": self.asserted,
            "params": self.params,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else ("FAIL" if self.asserted else "info")
        return f"[{status}] {self.name}: lhs={self.lhs:.6g} rhs={self.rhs:.6g} ratio={self.ratio:.6g}"


def _require_quadrature(geometry: GridGeometry, what: str):
    if geometry.mode is not Mode.QUADRATURE:
        raise ModeError(f"{what} compares Lebesgue measures and needs quadrature mode")


def _field(f: QSignal2D, window: QSignal2D) -> GaborField4D:
    """Forward transform, with the zero window mapped to the zero field."""
    if not np.any(window.data):
        g = f.geometry
        return GaborField4D(g, 0.0, np.zeros(g.shape * 2 + (4,)))
    return gqft_forward(f, window)


def _geometry_params(geometry: GridGeometry) -> dict:
    return geometry.to_header()


def concentration_epsilon(G: GaborField4D, mask: RegionMask) -> float:
    """``1 - energy of G on mask`` for a field of unit total energy, clamped to [0, 1]."""
    total = gabor_energy(G)
    if abs(total - 1.0) > 1e-6:
        raise NormalizationError(
            f"field energy is {total!r}; normalize f and the window to unit L2 norm first"
        )
    eps = 1.0 - gabor_energy(G, mask)
    return min(max(eps, 0.0), 1.0)


def check_concentration_lower_bound(
    f: QSignal2D, window: QSignal2D, mask: RegionMask, *, field_=None, params=None
) -> CheckReport:
    """Energy fraction ``1 - eps`` on ``mask`` against its measure."""
    _require_quadrature(f.geometry, "the concentration bound")
    G = _field(f, window) if field_ is None else field_
    eps = concentration_epsilon(G, mask)
    captured = gabor_energy(G, mask)
    p = {
        **_geometry_params(f.geometry),
        "epsilon": eps,
        "epsilon_clamped": eps != 1.0 - captured,
        "mask": mask.spec,
        **(params or {}),
    }
    return CheckReport.compare(
        "concentration", captured, mask_measure(mask), rtol=0.0, atol=1e-9, params=p
    )


def local_uncertainty_sides(f, window, G, mask) -> tuple[float, float]:
    """Both sides of the local inequality with no measure precondition.

    With ``m(mask) = 0`` the right side is the total field norm.
    """
    m = mask_measure(mask)
    lhs = lp_norm(f, 2) * lp_norm(window, 2)
    outside = gabor_energy(G, mask.complement())
    rhs = math.sqrt(outside) / math.sqrt(1.0 - m) if m < 1 else math.inf
    return lhs, rhs


def check_local_uncertainty(
    f: QSignal2D, window: QSignal2D, mask: RegionMask, *, field_=None, params=None
) -> CheckReport:
    """``|f| |phi| <= (1 - m)^(-1/2) * (energy off the mask)^(1/2)`` for ``0 < m < 1``."""
    _require_quadrature(f.geometry, "the local uncertainty bound")
    m = mask_measure(mask)
    if not 0 < m < 1:
        raise MaskMeasureError(
            f"local uncertainty needs 0 < m(Sigma) < 1, but the mask has measure {m!r}"
        )
    G = _field(f, window) if field_ is None else field_
    lhs, rhs = local_uncertainty_sides(f, window, G, mask)
    p = {**_geometry_params(f.geometry), "measure": m, "mask": mask.spec, **(params or {})}
    return CheckReport.compare("local-uncertainty", lhs, rhs, params=p)


def weighted_moment(G: GaborField4D, s: float) -> float:
    """``(sum |(omega, b)|^(2s) |G|^2 * cell)^(1/2)``."""
    weight = phase_radius(G.geometry) ** (2 * s)
    return math.sqrt(float(np.sum(weight * qabs2(G.data)) * G.cell_measure))


def _ball_measure(geometry: GridGeometry, t: float) -> float:
    return mask_measure(RegionMask.ball(geometry, t))


def _max_admissible_radius(geometry: GridGeometry) -> float:
    """Supremum of radii whose phase ball has measure below 1."""
    radii = np.sort(phase_radius(geometry).ravel())
    counts = np.arange(1, radii.size + 1) * geometry.phase_cell
    allowed = int(np.sum(counts < 1.0))  # largest admissible cell count
    if allowed >= radii.size:
        return float(radii[-1]) * (1 + 1e-9) + 1e-12
    return float(radii[allowed])


def check_weighted_bound(
    f: QSignal2D, window: QSignal2D, s: float, t="auto", *, n_radii: int = 32, params=None
) -> CheckReport:
    """``|f| |phi| <= C_s * M_s`` with ``C_s = 1 / (t^s sqrt(1 - m(B_t)))``.

    With ``t="auto"`` the radius minimizing ``C_s`` is picked from ``n_radii``
    evenly spaced radii up to the largest admissible one.
    """
    _require_quadrature(f.geometry, "the weighted moment bound")
    if not s > 0:
        raise PreconditionError(f"moment order s must be positive, got {s!r}")
    g = f.geometry
    if t == "auto" or t is None:
        t_max = _max_admissible_radius(g)
        candidates = [
            r for r in np.linspace(t_max / n_radii, t_max, n_radii)
            if r > 0 and _ball_measure(g, r) < 1
        ]
        if not candidates:
            raise NoAdmissibleRadiusError(
                "every ball of positive radius has measure >= 1 on this grid"
            )
        consts = [1.0 / (r**s * math.sqrt(1 - _ball_measure(g, r))) for r in candidates]
        best = int(np.argmin(consts))
        t, c_s = float(candidates[best]), consts[best]
    else:
        t = float(t)
        if not t > 0:
            raise PreconditionError(f"radius t must be positive, got {t!r}")
        m_t = _ball_measure(g, t)
        if not m_t < 1:
            raise MaskMeasureError(f"ball B_t with t={t!r} has measure {m_t!r} >= 1")
        c_s = 1.0 / (t**s * math.sqrt(1 - m_t))
    G = _field(f, window)
    moment = weighted_moment(G, s)
    lhs = lp_norm(f, 2) * lp_norm(window, 2)
    p = {
        **_geometry_params(g),
        "s": s,
        "t": t,
        "ball_measure": _ball_measure(g, t),
        "C_s": float(c_s),
        "moment": moment,
        **(params or {}),
    }
    return CheckReport.compare("weighted", lhs, c_s * moment, params=p)


def check_young_sup(f: QSignal2D, window: QSignal2D, p: float, *, params=None) -> CheckReport:
    """``max |G| <= |f|_q |phi|_p`` with ``1/p + 1/q = 1``."""
    _require_quadrature(f.geometry, "the sup bound")
    if not 1 < p < math.inf:
        raise PreconditionError(f"exponent p must lie in (1, inf), got {p!r}")
    q = p / (p - 1)
    G = _field(f, window)
    lhs = float(np.sqrt(qabs2(G.data).max()))
    rhs = lp_norm(f, q) * lp_norm(window, p)
    prm = {**_geometry_params(f.geometry), "p": p, "q": q, **(params or {})}
    return CheckReport.compare("young", lhs, rhs, params=prm)


def check_hausdorff_young(f: QSignal2D, p: float, *, params=None) -> CheckReport:
    """Q-modulus spectrum in ``L^p'`` against ``|f|_p`` for ``1 <= p <= 2``.

    Asserted only for signals with at most one nonzero real component; for
    several components the sum of moduli can exceed the bound (up to a
    factor 2 at p = 2) and the ratio is reported without a verdict.
    """
    if not 1 <= p <= 2:
        raise PreconditionError(f"Hausdorff-Young needs 1 <= p <= 2, got {p!r}")
    p_prime = math.inf if p == 1 else p / (p - 1)
    qmod = q_modulus_spectrum(f)
    lhs = hy_norm(qmod, p_prime, f.geometry.freq_cell)
    rhs = lp_norm(f, p)
    comps = f.nonzero_components()
    prm = {
        **_geometry_params(f.geometry),
        "p": p,
        "p_prime": p_prime if math.isfinite(p_prime) else "inf",
        "components": comps,
        **(params or {}),
    }
    return CheckReport.compare(
        "hausdorff-young", lhs, rhs, params=prm, asserted=len(comps) <= 1
    )
