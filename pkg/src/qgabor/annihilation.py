"""Projections onto masked and analysis-range fields, and annihilation probes.

Fields are treated as vectors of a real Hilbert space with inner product
``Re sum F conj(G) * cell``; the two-sided transform is only real-linear, so
adjoints and eigenvalues are taken over the reals.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    GeometryMismatchError,
    ModeError,
    NotAnnihilatingError,
    PreconditionError,
    SupportError,
    ZeroWindowError,
)
from .gqft import GaborField4D, analysis_array, gabor_energy, gqft_forward, synthesis_array
from .grid import Mode, QSignal2D, lp_norm
from .masks import Domain, RegionMask
from .uncertainty import CheckReport

__all__ = [
    "ConvergenceWarning",
    "OperatorNormEstimate",
    "project_mask",
    "project_range",
    "estimate_operator_norm",
    "operator_norm",
    "dense_operator_norm",
    "annihilation_constant",
    "check_annihilation_bound",
    "benedicks_probe",
]

# rho**2 closer to 1 than this is treated as rho = 1
_UNIT_GAP = 1e-10


class ConvergenceWarning(UserWarning):
    pass


def _window_energy(window: QSignal2D) -> float:
    e = lp_norm(window, 2) ** 2
    if e == 0:
        raise ZeroWindowError("window is identically zero")
    return e


def _mask_array(mask: RegionMask, geometry) -> np.ndarray:
    if mask.geometry != geometry:
        raise GeometryMismatchError("mask and field geometries differ")
    return mask.phase_indicator()[..., None]


def project_mask(F: GaborField4D, mask: RegionMask) -> GaborField4D:
    """Multiply by the indicator of ``mask``."""
    return F.with_data(F.data * _mask_array(mask, F.geometry))


def _range_projector(window: QSignal2D):
    g = window.geometry
    energy = _window_energy(window)
    w = window.data

    def apply(data: np.ndarray) -> np.ndarray:
        return analysis_array(synthesis_array(data, w, g) / energy, w, g)

    return apply


def project_range(F: GaborField4D, window: QSignal2D) -> GaborField4D:
    """Orthogonal projection onto ``{G_phi f}``: re-analyze the synthesis of ``F``."""
    if F.geometry != window.geometry:
        raise GeometryMismatchError("field and window geometries differ")
    return F.with_data(_range_projector(window)(F.data))


@dataclass(frozen=True)
class OperatorNormEstimate:
    rho: float
    eigenvalue: float
    iterations: int
    converged: bool


def estimate_operator_norm(
    window: QSignal2D,
    mask: RegionMask,
    max_iters: int = 5000,
    tol: float = 1e-14,
    seed: int = 0,
) -> OperatorNormEstimate:
    """Power iteration for ``|P_mask P_phi|`` on ``T = P_phi P_mask P_phi``.

    Stops once the Rayleigh quotient changes by less than ``tol``.
    """
    g = window.geometry
    P = _range_projector(window)
    chi = _mask_array(mask, g)
    rng = np.random.default_rng(seed)
    x = P(rng.standard_normal(g.shape * 2 + (4,)))
    nx = np.linalg.norm(x)
    if nx == 0:
        return OperatorNormEstimate(0.0, 0.0, 0, True)
    x /= nx
    lam = None
    for it in range(1, max_iters + 1):
        masked = x * chi
        lam_new = float(np.vdot(masked, masked))  # <x, T x> for x in range(P_phi)
        y = P(masked)
        ny = np.linalg.norm(y)
        if ny == 0 or lam_new == 0:
            return OperatorNormEstimate(0.0, 0.0, it, True)
        x = y / ny
        if lam is not None and abs(lam_new - lam) < tol:
            lam = lam_new
            break
        lam = lam_new
    else:
        rho = min(math.sqrt(max(lam, 0.0)), 1 + 1e-6)
        return OperatorNormEstimate(rho, lam, max_iters, False)
    rho = min(math.sqrt(max(lam, 0.0)), 1 + 1e-6)
    return OperatorNormEstimate(rho, lam, it, True)


def operator_norm(window, mask, max_iters: int = 5000, tol: float = 1e-14, seed: int = 0) -> float:
    est = estimate_operator_norm(window, mask, max_iters, tol, seed)
    if not est.converged:
        warnings.warn(
            f"power iteration stopped after {est.iterations} iterations without converging",
            ConvergenceWarning,
            stacklevel=2,
        )
    return est.rho


def dense_operator_norm(window: QSignal2D, mask: RegionMask, max_n: int = 4) -> float:
    """Operator norm from a dense eigensolve of the assembled ``P_phi P_mask P_phi``.

    The analysis matrix is built column by column with the literal transform
    sum, then ``P_phi = (cell_phase / cell_space) A A^T / |phi|^2``.  Meant as
    a reference for small grids only.
    """
    g = window.geometry
    if max(g.shape) > max_n:
        raise PreconditionError(f"dense assembly is limited to grids of side <= {max_n}")
    energy = _window_energy(window)
    n_in = g.n1 * g.n2 * 4
    basis = np.eye(n_in).reshape((n_in,) + g.shape + (4,))
    A = analysis_array(basis, window.data, g, method="direct").reshape(n_in, -1).T
    P = (g.phase_cell / g.spatial_cell) * (A @ A.T) / energy
    chi = np.repeat(mask.phase_indicator().ravel(), 4).astype(float)
    T = P @ (chi[:, None] * P)
    lam = float(np.linalg.eigvalsh(0.5 * (T + T.T))[-1])
    return math.sqrt(max(lam, 0.0))


def annihilation_constant(window: QSignal2D, mask: RegionMask, rho: float | None = None, **kw) -> float:
    """``C = (1 - rho^2)^(-1/2)`` bounding ``|f||phi|`` by the off-mask field norm."""
    if rho is None:
        rho = operator_norm(window, mask, **kw)
    if rho**2 >= 1 - _UNIT_GAP:
        raise NotAnnihilatingError(
            f"|P_Sigma P_phi| = {rho!r} is not below 1; no annihilation constant"
        )
    return 1.0 / math.sqrt(1.0 - rho**2)


def check_annihilation_bound(
    f: QSignal2D, window: QSignal2D, mask: RegionMask, rho: float, *, params=None
) -> CheckReport:
    """``|f| |phi| <= C(Sigma) * (energy of G_phi f off Sigma)^(1/2)``."""
    c = annihilation_constant(window, mask, rho=rho)
    G = gqft_forward(f, window)
    lhs = lp_norm(f, 2) * lp_norm(window, 2)
    rhs = c * math.sqrt(gabor_energy(G, mask.complement()))
    p = {**f.geometry.to_header(), "rho": rho, "C": c, "mask": mask.spec, **(params or {})}
    return CheckReport.compare("annihilation", lhs, rhs, params=p)


def _decay_rate(norms: np.ndarray, start: int = 10) -> float:
    """Per-step geometric rate from a least-squares fit of log norms over steps >= start."""
    steps = np.arange(norms.size)
    keep = (steps >= start) & (norms > 0)
    if keep.sum() < 2:
        return 0.0
    slope = np.polyfit(steps[keep], np.log(norms[keep]), 1)[0]
    return float(math.exp(slope))


def benedicks_probe(
    window: QSignal2D,
    S: RegionMask,
    R: float,
    r: float,
    trials: int = 10,
    seed: int = 0,
    steps: int = 50,
    max_iters: int = 5000,
    tol: float = 1e-14,
) -> CheckReport:
    """Probe ``Sigma = S x B_R`` for a window supported in the spatial ball ``B_r``.

    Estimates ``rho = |P_Sigma P_phi|`` and runs the alternating projections
    ``F <- P_Sigma P_phi F`` from ``trials`` random starts.  Passes when
    ``rho < 1`` and every run shrinks by at least ``rho^steps`` after ``steps``
    iterations.
    """
    g = window.geometry
    if g.mode is not Mode.QUADRATURE:
        raise ModeError("the Benedicks probe works on quadrature grids")
    if S.domain is not Domain.FREQ2D:
        raise PreconditionError("S must be a freq2d mask")
    outside = np.argwhere((g.spatial_radius() >= r) & np.any(window.data != 0, axis=-1))
    if outside.size:
        raise SupportError(
            f"window is nonzero outside B_r (r={r!r}) at cells {outside.tolist()}",
            outside.tolist(),
        )
    sigma = RegionMask.product(S, R)
    est = estimate_operator_norm(window, sigma, max_iters, tol, seed)
    rho = est.rho
    P = _range_projector(window)
    chi = _mask_array(sigma, g)
    ratios, rates = [], []
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        F = rng.standard_normal(g.shape * 2 + (4,))
        norms = [np.linalg.norm(F)]
        for _ in range(steps):
            F = P(F) * chi
            norms.append(np.linalg.norm(F))
        norms = np.asarray(norms)
        ratios.append(float(norms[-1] / norms[0]))
        rates.append(_decay_rate(norms))
    worst = max(ratios) if ratios else 0.0
    params = {
        **g.to_header(),
        "rho": rho,
        "delta": 1.0 - rho,
        "power_iterations": est.iterations,
        "converged": est.converged,
        "steps": steps,
        "decay_rates": rates,
        "expected_rate": rho**2,
        "ratios": ratios,
        "r": r,
        "R": R,
        "S": S.spec,
        "S_measure": S.measure,
        "Sigma_measure": sigma.measure,
        "seed": seed,
        "trials": trials,
    }
    report = CheckReport.compare("benedicks", worst, rho**steps, rtol=1e-6, params=params)
    report.passed = report.passed and rho < 1
    return report
