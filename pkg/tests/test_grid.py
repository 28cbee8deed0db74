import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import loop_lp
from qgabor.exceptions import GeometryMismatchError, PreconditionError, ZeroWindowError
from qgabor.grid import (
    GridGeometry,
    Mode,
    QSignal2D,
    circular_shift,
    from_rgb_image,
    inner_product,
    lp_norm,
    make_window,
    random_signal,
    to_rgb_image,
)
from qgabor.quaternion import I, Quaternion, qabs


def test_geometry_coordinates():
    g = GridGeometry.quadrature(4, L1=2.0)
    x1, _ = g.spatial_axes()
    np.testing.assert_allclose(x1, [-0.75, -0.25, 0.25, 0.75])
    w1, _ = g.freq_axes()
    np.testing.assert_allclose(w1, [-1.0, -0.5, 0.0, 0.5])
    b1, _ = g.shift_axes()
    np.testing.assert_allclose(b1, [0.0, 0.5, -1.0, -0.5])
    assert g.steps == (0.5, 0.5)


def test_geometry_validation():
    with pytest.raises(ValueError):
        GridGeometry(0, 4)
    with pytest.raises(ValueError):
        GridGeometry(4, 4, Mode.QUADRATURE)
    assert GridGeometry(4, 4, "discrete").L1 is None


def test_total_spatial_measure():
    g = GridGeometry.quadrature(6, 5, L1=3.0, L2=2.5)
    assert g.spatial_cell * g.n1 * g.n2 == pytest.approx(7.5, rel=1e-15)
    assert GridGeometry.discrete(6, 5).spatial_cell * 30 == 30


def test_lp_norm_examples():
    g = GridGeometry.discrete(4)
    delta = np.zeros((4, 4))
    delta[1, 2] = 1
    assert lp_norm(QSignal2D.from_real(g, delta), 2) == 1.0
    assert lp_norm(QSignal2D.from_real(g, np.ones((4, 4))), 2) == 4.0


@pytest.mark.parametrize("geometry", [GridGeometry.discrete(5, 7), GridGeometry.quadrature(6, L1=2.5)])
@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0])
def test_lp_norm_matches_loop(rng, geometry, p):
    f = random_signal(geometry, rng)
    expected = loop_lp(f.data, p, geometry.spatial_cell)
    assert lp_norm(f, p) == pytest.approx(expected, rel=1e-12)


def test_lp_norm_inf_and_rejects_small_p(rng, discrete8):
    f = random_signal(discrete8, rng)
    assert lp_norm(f, math.inf) == qabs(f.data).max()
    with pytest.raises(PreconditionError):
        lp_norm(f, 0.5)


def test_inner_product(rng, quad8):
    f = random_signal(quad8, rng)
    ip = inner_product(f, f)
    assert ip.q1 == pytest.approx(lp_norm(f) ** 2, rel=1e-12)
    assert max(abs(ip.q2), abs(ip.q3), abs(ip.q4)) < 1e-12 * ip.q1


def test_inner_product_disjoint_support(discrete8):
    a = np.zeros((8, 8))
    b = np.zeros((8, 8))
    a[:4] = 1
    b[4:] = 2
    ip = inner_product(QSignal2D.from_real(discrete8, a), QSignal2D.from_real(discrete8, b))
    assert ip == Quaternion()


def test_inner_product_left_unit(rng, discrete8):
    f = QSignal2D.from_real(discrete8, rng.standard_normal((8, 8)))
    ip = inner_product(I * f, f)
    expected = lp_norm(f) ** 2
    np.testing.assert_allclose(ip.as_array(), [0, expected, 0, 0], atol=1e-12 * expected)


def test_inner_product_geometry_mismatch(rng):
    f = random_signal(GridGeometry.discrete(4), rng)
    g = random_signal(GridGeometry.discrete(5), rng)
    with pytest.raises(GeometryMismatchError):
        inner_product(f, g)


def test_circular_shift(discrete8, rng):
    f = random_signal(discrete8, rng)
    np.testing.assert_array_equal(circular_shift(f, (0, 0)).data, f.data)
    delta = np.zeros((8, 8))
    delta[0, 0] = 1
    moved = circular_shift(QSignal2D.from_real(discrete8, delta), (2, 3)).data[..., 0]
    assert moved[2, 3] == 1 and moved.sum() == 1
    for _ in range(100):
        f = random_signal(discrete8, rng)
        b = rng.integers(-10, 10, size=2)
        shifted = circular_shift(f, b)
        assert lp_norm(shifted) == pytest.approx(lp_norm(f), rel=1e-14)
        np.testing.assert_array_equal(shifted.data[b[0] % 8, b[1] % 8], f.data[0, 0])


def test_windows(discrete8):
    delta = make_window(discrete8, "delta", normalize=True)
    assert lp_norm(delta) == 1.0
    assert delta.data[0, 0, 0] == 1.0
    box = make_window(discrete8, "box", half_width=100)
    np.testing.assert_array_equal(box.data[..., 0], np.ones((8, 8)))
    with pytest.raises(ZeroWindowError):
        make_window(GridGeometry.quadrature(8, L1=4.0), "box", half_width=0.1)
    with pytest.raises(PreconditionError):
        make_window(discrete8, "hann")


def test_gaussian_window_energy_matches_integral():
    # integral of exp(-2 pi |x|^2) over the plane is 1/2
    g = GridGeometry.quadrature(32, L1=8.0)
    w = make_window(g, "gaussian", sigma=1.0)
    assert lp_norm(w) ** 2 == pytest.approx(0.5, rel=0.01)


def test_truncated_window_support(quad8):
    w = make_window(quad8, "gaussian", radius=1.0)
    r = quad8.spatial_radius()
    assert np.all(w.data[r >= 1.0] == 0)
    assert np.all(w.data[r < 1.0, 0] > 0)


def test_rgb_encoding(rng):
    black = np.zeros((4, 5, 3), np.uint8)
    assert not np.any(from_rgb_image(black).data)
    red = black.copy()
    red[..., 0] = 255
    f = from_rgb_image(red)
    np.testing.assert_array_equal(f.data[..., 1], 1.0)
    assert not np.any(f.data[..., [0, 2, 3]])
    for _ in range(20):
        img = rng.integers(0, 256, size=(6, 7, 3), dtype=np.uint8)
        np.testing.assert_array_equal(to_rgb_image(from_rgb_image(img)), img)


def test_signal_is_read_only(rng, discrete8):
    f = random_signal(discrete8, rng)
    with pytest.raises(ValueError):
        f.data[0, 0, 0] = 1.0


@settings(max_examples=50, deadline=None)
@given(
    st.floats(0.01, 100),
    st.sampled_from([1.0, 4 / 3, 2.0, 3.0, math.inf]),
    st.integers(0, 2**32 - 1),
)
def test_lp_norm_scales(c, p, seed):
    g = GridGeometry.quadrature(4, L1=3.0)
    f = random_signal(g, np.random.default_rng(seed))
    assert lp_norm(c * f, p) == pytest.approx(c * lp_norm(f, p), rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(1.05, 20), st.integers(0, 2**32 - 1))
def test_holder(p, seed):
    g = GridGeometry.quadrature(4, L1=2.0)
    rng = np.random.default_rng(seed)
    f, h = random_signal(g, rng), random_signal(g, rng)
    q = p / (p - 1)
    assert abs(inner_product(f, h)) <= lp_norm(f, p) * lp_norm(h, q) + 1e-12
