import math

import numpy as np
import pytest

from oracles import loop_qft
from qgabor.exceptions import PreconditionError
from qgabor.grid import GridGeometry, QSignal2D, QSpectrum2D, lp_norm, random_signal
from qgabor.qft import dqft_direct, dqft_fast, hy_norm, idqft, q_modulus_spectrum
from qgabor.quaternion import qabs


def _delta(g, value=(1, 0, 0, 0), at=(0, 0)):
    data = np.zeros(g.shape + (4,))
    data[at] = value
    return QSignal2D(g, data)


@pytest.mark.parametrize("shape", [(4, 4), (3, 5)])
def test_direct_matches_loop_discrete(rng, shape):
    g = GridGeometry.discrete(*shape)
    f = random_signal(g, rng)
    np.testing.assert_allclose(dqft_direct(f).data, loop_qft(f.data), atol=1e-12)


def test_direct_matches_loop_quadrature(rng):
    g = GridGeometry.quadrature(4, 3, L1=2.0, L2=1.5)
    f = random_signal(g, rng)
    coords = (*g.spatial_axes(), *g.freq_axes())
    expected = loop_qft(f.data, coords=coords, scale=g.spatial_cell)
    np.testing.assert_allclose(dqft_direct(f).data, expected, atol=1e-12)


def test_delta_gives_flat_spectrum():
    g = GridGeometry.discrete(4, 8)
    F = dqft_direct(_delta(g)).data
    np.testing.assert_allclose(F[..., 0], 1 / math.sqrt(32), atol=1e-15)
    np.testing.assert_allclose(F[..., 1:], 0, atol=1e-15)
    np.testing.assert_allclose(dqft_fast(_delta(g)).data, F, atol=1e-15)


def test_j_delta():
    # only n = 0 contributes and both kernels are 1 there
    g = GridGeometry.discrete(4)
    F = dqft_direct(_delta(g, (0, 0, 1, 0))).data
    expected = np.zeros_like(F)
    expected[..., 2] = 1 / 4
    np.testing.assert_allclose(F, expected, atol=1e-15)


def test_constant_signal():
    g = GridGeometry.discrete(4)
    F = dqft_direct(QSignal2D.from_real(g, np.ones((4, 4)))).data
    expected = np.zeros_like(F)
    expected[0, 0, 0] = 4
    np.testing.assert_allclose(F, expected, atol=1e-14)


def test_sandwich_order_matters():
    # i f j with f = k: i k j = -j j = 1, while k i j would give -1
    g = GridGeometry.discrete(2, 2)
    data = np.zeros((2, 2, 4))
    data[1, 1, 3] = 1.0
    F = dqft_direct(QSignal2D(g, data)).data
    # m = (1, 1): exp(-i pi) k exp(-j pi) = (-1) k (-1) = k
    np.testing.assert_allclose(F[1, 1], [0, 0, 0, 0.5], atol=1e-15)
    np.testing.assert_allclose(dqft_fast(QSignal2D(g, data)).data, F, atol=1e-15)


@pytest.mark.parametrize("n", [4, 8, 16])
def test_fast_matches_direct(rng, n):
    g = GridGeometry.discrete(n)
    for _ in range(20):
        f = random_signal(g, rng)
        f = f * (1 / lp_norm(f))
        assert np.abs(dqft_fast(f).data - dqft_direct(f).data).max() <= 1e-10


@pytest.mark.parametrize(
    "geometry",
    [GridGeometry.discrete(6, 5), GridGeometry.quadrature(8, L1=4.0), GridGeometry.quadrature(7, 6, L1=3.0, L2=5.0)],
)
def test_fast_matches_direct_other_grids(rng, geometry):
    for _ in range(10):
        f = random_signal(geometry, rng)
        f = f * (1 / lp_norm(f))
        assert np.abs(dqft_fast(f).data - dqft_direct(f).data).max() <= 1e-10


def test_real_linearity(rng, discrete8):
    f, g = random_signal(discrete8, rng), random_signal(discrete8, rng)
    a, b = 1.7, -0.3
    lhs = dqft_fast(a * f + b * g).data
    rhs = a * dqft_fast(f).data + b * dqft_fast(g).data
    np.testing.assert_allclose(lhs, rhs, atol=1e-11)


@pytest.mark.parametrize("geometry", [GridGeometry.discrete(8), GridGeometry.quadrature(8, 6, L1=4.0, L2=3.0)])
def test_unitarity(rng, geometry):
    for _ in range(100):
        f = random_signal(geometry, rng)
        assert lp_norm(dqft_fast(f)) == pytest.approx(lp_norm(f), rel=1e-11)


@pytest.mark.parametrize("geometry", [GridGeometry.discrete(8), GridGeometry.quadrature(8, L1=4.0)])
@pytest.mark.parametrize("method", ["fast", "direct"])
def test_inverse_round_trip(rng, geometry, method):
    for _ in range(25 if method == "fast" else 5):
        f = random_signal(geometry, rng)
        rec = idqft(dqft_fast(f), method=method)
        assert lp_norm(rec - f) / lp_norm(f) <= 1e-10


def test_inverse_examples():
    g = GridGeometry.discrete(4)
    flat = np.zeros((4, 4, 4))
    flat[..., 0] = 1 / 4
    rec = idqft(QSpectrum2D(g, flat)).data
    np.testing.assert_allclose(rec, _delta(g).data, atol=1e-15)
    assert not np.any(idqft(QSpectrum2D.zeros(g)).data)


def test_q_modulus_real_signal(rng, discrete8):
    f = QSignal2D.from_real(discrete8, rng.standard_normal((8, 8)))
    np.testing.assert_allclose(q_modulus_spectrum(f), qabs(dqft_fast(f).data), atol=1e-12)


def test_q_modulus_delta():
    g = GridGeometry.discrete(4)
    q = (0.5, -1.0, 2.0, -0.25)
    qmod = q_modulus_spectrum(_delta(g, q))
    np.testing.assert_allclose(qmod, sum(abs(c) for c in q) / 4, atol=1e-15)


def test_q_modulus_dominates_modulus(rng, discrete8):
    for _ in range(20):
        f = random_signal(discrete8, rng)
        assert np.all(q_modulus_spectrum(f) >= qabs(dqft_fast(f).data) - 1e-12)


def test_hy_norm(rng, discrete8):
    f = QSignal2D.from_real(discrete8, rng.standard_normal((8, 8)))
    qmod = q_modulus_spectrum(f)
    assert hy_norm(qmod, 2) == pytest.approx(lp_norm(f), rel=1e-11)
    assert hy_norm(qmod, math.inf) == qmod.max()
    assert hy_norm(np.zeros((8, 8)), 3) == 0
    with pytest.raises(PreconditionError):
        hy_norm(qmod, 0.5)
