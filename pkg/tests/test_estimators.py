import numpy as np
import pytest
from sklearn.base import clone
from sklearn.decomposition import PCA
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from qgabor import GaborQuaternionTransformer, QuaternionFourierTransformer
from qgabor.exceptions import PreconditionError
from qgabor.grid import GridGeometry, QSignal2D, lp_norm
from qgabor.qft import dqft_fast


@pytest.fixture
def batch(rng):
    return rng.standard_normal((5, 6, 6, 4))


def test_params_and_clone():
    est = QuaternionFourierTransformer(mode="quadrature", L1=3.0)
    assert est.get_params()["L1"] == 3.0
    c = clone(est.set_params(method="direct"))
    assert c.get_params() == est.get_params()
    assert set(GaborQuaternionTransformer().get_params()) >= {"window", "sigma", "mode", "flatten"}


def test_qft_transformer_matches_function(batch):
    out = QuaternionFourierTransformer().fit_transform(batch)
    g = GridGeometry.discrete(6)
    for x, y in zip(batch, out):
        np.testing.assert_allclose(y, dqft_fast(QSignal2D(g, x)).data, atol=1e-13)


@pytest.mark.parametrize("kw", [{}, {"mode": "quadrature", "L1": 2.0, "L2": 3.0}, {"method": "direct"}])
def test_qft_transformer_round_trip(batch, kw):
    est = QuaternionFourierTransformer(**kw).fit(batch)
    np.testing.assert_allclose(est.inverse_transform(est.transform(batch)), batch, atol=1e-12)


def test_flat_input_and_output(batch):
    flat = batch.reshape(5, -1)
    est = QuaternionFourierTransformer(grid_shape=(6, 6), flatten=True).fit(flat)
    out = est.transform(flat)
    assert out.shape == (5, 144)
    np.testing.assert_allclose(est.inverse_transform(out), flat, atol=1e-12)


def test_real_batch_is_scalar_part(rng):
    X = rng.standard_normal((3, 4, 4))
    est = QuaternionFourierTransformer().fit(X)
    full = np.zeros(X.shape + (4,))
    full[..., 0] = X
    np.testing.assert_allclose(est.transform(X), est.transform(full))


def test_validation_errors(batch):
    with pytest.raises(NotFittedError):
        QuaternionFourierTransformer().transform(batch)
    with pytest.raises(PreconditionError):
        QuaternionFourierTransformer().fit(batch.reshape(5, -1))
    with pytest.raises(PreconditionError):
        QuaternionFourierTransformer(grid_shape=(5, 5)).fit(batch.reshape(5, -1))
    with pytest.raises(PreconditionError):
        QuaternionFourierTransformer(method="slow").fit(batch)
    with pytest.raises(PreconditionError):
        QuaternionFourierTransformer(mode="quadrature").fit(batch)
    est = QuaternionFourierTransformer().fit(batch)
    with pytest.raises(PreconditionError):
        est.transform(batch[:, :4, :4])
    with pytest.raises(PreconditionError):
        est.transform(np.zeros((2, 6, 6, 3)))


def test_gabor_transformer_round_trip_and_energy(batch):
    est = GaborQuaternionTransformer(sigma=2.0).fit(batch)
    G = est.transform(batch)
    assert G.shape == (5, 6, 6, 6, 6, 4)
    np.testing.assert_allclose(est.inverse_transform(G), batch, atol=1e-12)
    g = GridGeometry.discrete(6)
    norms = [lp_norm(QSignal2D(g, x)) ** 2 for x in batch]
    np.testing.assert_allclose(est.energy(batch), norms, rtol=1e-11)


@pytest.mark.parametrize("window", ["box", "delta"])
def test_gabor_window_kinds(batch, window):
    est = GaborQuaternionTransformer(window=window, half_width=1.0, normalize_window=False).fit(batch)
    np.testing.assert_allclose(est.inverse_transform(est.transform(batch)), batch, atol=1e-12)


def test_gabor_array_window(batch, rng):
    w = rng.standard_normal((6, 6))
    est = GaborQuaternionTransformer(window=w, flatten=True).fit(batch)
    assert est.window_norm_sq_ == pytest.approx(1.0)
    out = est.transform(batch)
    assert out.shape == (5, 6**4 * 4)
    np.testing.assert_allclose(est.inverse_transform(out), batch.reshape(5, -1), atol=1e-12)
    with pytest.raises(PreconditionError):
        GaborQuaternionTransformer(window=np.zeros((6, 6))).fit(batch)
    with pytest.raises(PreconditionError):
        est.inverse_transform(np.zeros((1, 6, 6, 6, 5, 4)))


def test_pipeline(batch):
    pipe = make_pipeline(QuaternionFourierTransformer(flatten=True), PCA(n_components=3))
    Z = pipe.fit_transform(batch)
    assert Z.shape == (5, 3)
