"""Randomized verification suites and their runner.

Each suite draws seeded random inputs, runs one checker per trial and
returns a list of :class:`~qgabor.uncertainty.CheckReport`.  Trial ``t`` of a
suite uses ``numpy.random.default_rng([seed, salt, t])`` so any single trial
can be re-run from the parameters stored in its report.
"""

from __future__ import annotations

import json
import logging
import math
import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .annihilation import (
    benedicks_probe,
    check_annihilation_bound,
    dense_operator_norm,
    estimate_operator_norm,
)
from .exceptions import MaskMeasureError, ModeError, PreconditionError
from .gqft import gabor_energy, gqft_forward, gqft_inverse
from .grid import GridGeometry, Mode, QSignal2D, lp_norm, make_window, random_signal
from .masks import RegionMask, phase_radius
from .qft import dqft_direct, dqft_fast
from .quaternion import qabs2
from .uncertainty import (
    CheckReport,
    check_concentration_lower_bound,
    check_hausdorff_young,
    check_local_uncertainty,
    check_weighted_bound,
    check_young_sup,
)

log = logging.getLogger(__name__)

SUITES = (
    "plancherel",
    "inversion",
    "qft-oracle",
    "young",
    "hausdorff-young",
    "concentration",
    "local-uncertainty",
    "weighted",
    "annihilation",
    "benedicks",
)

BENEDICKS_L = 3 * math.sqrt(2)  # a centered 3x3 frequency square then has measure 1/2


@dataclass
class SuiteConfig:
    """Options for :func:`run_verify_suite`; ``None`` means the suite's default."""

    suites: list = field(default_factory=list)
    n1: int | None = None
    n2: int | None = None
    mode: str | None = None
    L1: float | None = None
    L2: float | None = None
    trials: int | None = None
    seed: int = 0
    mask: dict | None = None
    out: str | None = None

    def __post_init__(self):
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise PreconditionError(f"unknown suite(s) {unknown}; choose from {list(SUITES)}")
        if self.mode is not None:
            self.mode = Mode(self.mode).value

    def geometry(self, mode: Mode, n: int, L: float) -> GridGeometry:
        if self.mode is not None and Mode(self.mode) is not mode:
            raise ModeError(f"this suite runs in {mode.value} mode, not {self.mode}")
        n1 = self.n1 or n
        n2 = self.n2 or self.n1 or n
        if mode is Mode.DISCRETE:
            return GridGeometry(n1, n2, mode)
        L1 = self.L1 or L
        return GridGeometry(n1, n2, mode, L1, self.L2 or L1)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("QGABOR_THREADS", "1")))
    except ValueError:
        return 1


def _map_trials(fn, trials: int) -> list:
    threads = _threads()
    if threads == 1:
        return [fn(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials)))


def _rng(seed: int, name: str, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode()), trial])


def _unit(f: QSignal2D) -> QSignal2D:
    return f * (1.0 / lp_norm(f, 2))


def _trial_params(cfg, name, trial, **extra):
    return {"suite": name, "seed": cfg.seed, "trial": trial, **extra}


def random_phase_mask(G, rng, max_count=None) -> RegionMask:
    """A random phase-space mask: scattered cells, the top-energy cells, or a ball.

    ``max_count`` caps the number of cells (used to keep the measure below 1).
    """
    g = G.geometry
    total = (g.n1 * g.n2) ** 2
    cap = total if max_count is None else max_count
    count = int(rng.integers(1, cap + 1))
    style = rng.integers(3)
    if style == 0:
        cells = rng.choice(total, size=count, replace=False)
    elif style == 1:
        cells = np.argsort(qabs2(G.data).ravel())[::-1][:count]
    else:
        cells = np.argsort(phase_radius(g).ravel(), kind="stable")[:count]
    ind = np.zeros(total, bool)
    ind[cells] = True
    return RegionMask.from_indicator(g, ind.reshape(g.shape * 2))


# -- suites --------------------------------------------------------------------


def suite_plancherel(cfg: SuiteConfig) -> list:
    g = cfg.geometry(Mode.DISCRETE, 8, 4.0)

    def trial(t):
        rng = _rng(cfg.seed, "plancherel", t)
        f, w = random_signal(g, rng), random_signal(g, rng)
        expected = lp_norm(f) ** 2 * lp_norm(w) ** 2
        err = abs(gabor_energy(gqft_forward(f, w)) - expected) / expected
        return CheckReport.compare(
            "plancherel", err, 1e-10, rtol=0.0,
            params={**g.to_header(), **_trial_params(cfg, "plancherel", t)},
        )

    return _map_trials(trial, cfg.trials or 100)


def suite_inversion(cfg: SuiteConfig) -> list:
    g = cfg.geometry(Mode.DISCRETE, 8, 4.0)

    def trial(t):
        rng = _rng(cfg.seed, "inversion", t)
        f, w = random_signal(g, rng), random_signal(g, rng)
        rec = gqft_inverse(gqft_forward(f, w), w)
        err = lp_norm(rec - f) / lp_norm(f)
        return CheckReport.compare(
            "inversion", err, 1e-10, rtol=0.0,
            params={**g.to_header(), **_trial_params(cfg, "inversion", t)},
        )

    return _map_trials(trial, cfg.trials or 100)


def suite_qft_oracle(cfg: SuiteConfig) -> list:
    sizes = [cfg.n1] if cfg.n1 else [4, 8, 16]
    reports = []
    for n in sizes:
        g = cfg.geometry(Mode.DISCRETE, n, 4.0)

        def trial(t, g=g):
            rng = _rng(cfg.seed, f"qft-oracle-{g.n1}x{g.n2}", t)
            f = _unit(random_signal(g, rng))
            fast, direct = dqft_fast(f), dqft_direct(f)
            dev = float(np.abs(fast.data - direct.data).max())
            unit_err = abs(lp_norm(fast) - lp_norm(f)) / lp_norm(f)
            base = {**g.to_header(), **_trial_params(cfg, "qft-oracle", t)}
            return [
                CheckReport.compare("qft-oracle", dev, 1e-10, rtol=0.0, params=base),
                CheckReport.compare("qft-unitarity", unit_err, 1e-11, rtol=0.0, params=base),
            ]

        for pair in _map_trials(trial, cfg.trials or 200):
            reports.extend(pair)
    return reports


def suite_young(cfg: SuiteConfig) -> list:
    g = cfg.geometry(Mode.QUADRATURE, 8, 4.0)
    reports = []
    for p in (2.0, 4.0 / 3.0, 4.0):

        def trial(t, p=p):
            rng = _rng(cfg.seed, f"young-{p}", t)
            f, w = random_signal(g, rng), random_signal(g, rng)
            return check_young_sup(f, w, p, params=_trial_params(cfg, "young", t))

        reports.extend(_map_trials(trial, cfg.trials or 100))
    return reports


def suite_hausdorff_young(cfg: SuiteConfig) -> list:
    g = cfg.geometry(Mode.DISCRETE, 8, 4.0)
    reports = []
    for p in (1.0, 4.0 / 3.0, 2.0):

        def trial(t, p=p):
            rng = _rng(cfg.seed, f"hausdorff-young-{p}", t)
            comp = int(rng.integers(4))
            single = random_signal(g, rng, components=(comp,))
            multi = random_signal(g, rng)
            prm = _trial_params(cfg, "hausdorff-young", t)
            return [
                check_hausdorff_young(single, p, params=prm),
                check_hausdorff_young(multi, p, params=prm),
            ]

        for pair in _map_trials(trial, cfg.trials or 100):
            reports.extend(pair)
    return reports


def _fixed_mask(cfg, g):
    return None if cfg.mask is None else RegionMask.from_spec(cfg.mask, g)


def suite_concentration(cfg: SuiteConfig) -> list:
    g = cfg.geometry(Mode.QUADRATURE, 8, 4.0)
    fixed = _fixed_mask(cfg, g)

    def trial(t):
        rng = _rng(cfg.seed, "concentration", t)
        f, w = _unit(random_signal(g, rng)), _unit(random_signal(g, rng))
        G = gqft_forward(f, w)
        mask = fixed if fixed is not None else random_phase_mask(G, rng)
        return check_concentration_lower_bound(
            f, w, mask, field_=G, params=_trial_params(cfg, "concentration", t)
        )

    return _map_trials(trial, cfg.trials or 1000)


def suite_local_uncertainty(cfg: SuiteConfig) -> list:
    g = cfg.geometry(Mode.QUADRATURE, 8, 4.0)
    fixed = _fixed_mask(cfg, g)
    if fixed is not None and not 0 < fixed.measure < 1:
        # fail fast, before any trial runs
        raise MaskMeasureError(
            f"local uncertainty needs 0 < m(Sigma) < 1, but the mask has measure {fixed.measure!r}"
        )
    below_one = g.n1 * g.n2 - 1

    def trial(t):
        rng = _rng(cfg.seed, "local-uncertainty", t)
        f, w = random_signal(g, rng), random_signal(g, rng)
        G = gqft_forward(f, w)
        mask = fixed if fixed is not None else random_phase_mask(G, rng, max_count=below_one)
        return check_local_uncertainty(
            f, w, mask, field_=G, params=_trial_params(cfg, "local-uncertainty", t)
        )

    return _map_trials(trial, cfg.trials or 1000)


def suite_weighted(cfg: SuiteConfig) -> list:
    g = cfg.geometry(Mode.QUADRATURE, 8, 4.0)
    reports = []
    for s in (0.5, 1.0, 2.0):

        def trial(t, s=s):
            rng = _rng(cfg.seed, f"weighted-{s}", t)
            f, w = random_signal(g, rng), random_signal(g, rng)
            return check_weighted_bound(f, w, s, params=_trial_params(cfg, "weighted", t))

        reports.extend(_map_trials(trial, cfg.trials or 50))
        gg = GridGeometry.quadrature(16, L1=8.0)
        gauss = make_window(gg, "gaussian", sigma=1.0, normalize=True)
        rep = check_weighted_bound(gauss, gauss, s, params={"suite": "weighted", "pair": "gaussian"})
        reports.append(rep)
    return reports


def suite_annihilation(cfg: SuiteConfig) -> list:
    g = cfg.geometry(Mode.QUADRATURE, 4, 2.0)
    rng = _rng(cfg.seed, "annihilation-setup", 0)
    window = _unit(random_signal(g, rng))
    if cfg.mask is not None:
        mask = RegionMask.from_spec(cfg.mask, g)
    else:
        mask = RegionMask.from_indicator(g, rng.random(g.shape * 2) < 0.05)
    base = {**g.to_header(), "suite": "annihilation", "seed": cfg.seed, "mask": mask.spec}
    est = estimate_operator_norm(window, mask, seed=cfg.seed)
    reports = []
    if max(g.shape) <= 4:
        dense = dense_operator_norm(window, mask)
        reports.append(CheckReport.compare(
            "annihilation-dense-oracle", abs(est.rho - dense), 1e-6, rtol=0.0,
            params={**base, "rho": est.rho, "rho_dense": dense},
        ))
    full = estimate_operator_norm(window, RegionMask.full(g), seed=cfg.seed).rho
    empty = estimate_operator_norm(window, RegionMask.empty(g), seed=cfg.seed).rho
    reports.append(CheckReport.compare(
        "annihilation-full", abs(full - 1.0), 1e-6, rtol=0.0, params={**base, "rho": full}
    ))
    reports.append(CheckReport.compare(
        "annihilation-empty", empty, 1e-8, rtol=0.0, params={**base, "rho": empty}
    ))
    if est.rho < 1:

        def trial(t):
            f = random_signal(g, _rng(cfg.seed, "annihilation", t))
            return check_annihilation_bound(
                f, window, mask, est.rho, params=_trial_params(cfg, "annihilation", t)
            )

        reports.extend(_map_trials(trial, cfg.trials or 100))
    return reports


def default_benedicks_setup(g: GridGeometry):
    """Truncated Gaussian window in ``B_{L/8}``, centered 3x3 frequency square, ``R = L/4``."""
    L = g.L1
    r = L / 8
    window = make_window(g, "gaussian", sigma=L / 8, radius=r, normalize=True)
    a1, a2 = 1.5 / g.L1, 1.5 / g.L2  # closed box holding the three central frequencies
    S = RegionMask.rect(g, [(-a1, a1), (-a2, a2)])
    return window, S, L / 4, r


def suite_benedicks(cfg: SuiteConfig) -> list:
    g = cfg.geometry(Mode.QUADRATURE, 8, BENEDICKS_L)
    window, S, R, r = default_benedicks_setup(g)
    if cfg.mask is not None:
        spec = cfg.mask
        if spec.get("kind") != "product":
            raise PreconditionError("the benedicks suite needs a product mask {'kind': 'product', ...}")
        S = RegionMask.from_spec({**spec["S"], "domain": "freq2d"}, g)
        R = float(spec["R"])
    seeds = [cfg.seed + k for k in range(cfg.trials or 10)]
    return [benedicks_probe(window, S, R, r, trials=3, seed=s) for s in seeds]


_RUNNERS = {
    "plancherel": suite_plancherel,
    "inversion": suite_inversion,
    "qft-oracle": suite_qft_oracle,
    "young": suite_young,
    "hausdorff-young": suite_hausdorff_young,
    "concentration": suite_concentration,
    "local-uncertainty": suite_local_uncertainty,
    "weighted": suite_weighted,
    "annihilation": suite_annihilation,
    "benedicks": suite_benedicks,
}


def run_suites(cfg: SuiteConfig) -> list:
    reports = []
    for name in cfg.suites:
        log.info("running suite %s", name)
        reports.extend(_RUNNERS[name](cfg))
    return reports


def write_reports(reports, path):
    with open(path, "w") as fh:
        json.dump([r.to_dict() for r in reports], fh, indent=1)
        fh.write("\n")


def run_verify_suite(cfg: SuiteConfig) -> tuple[list, int]:
    """Run the configured suites, write the JSON report, return ``(reports, exit_code)``.

    The exit code is 1 when any asserted check failed and 0 otherwise.
    """
    reports = run_suites(cfg)
    if cfg.out:
        write_reports(reports, cfg.out)
    return reports, int(any(r.failed for r in reports))
