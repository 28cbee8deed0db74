import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgabor.quaternion import (
    I,
    J,
    K,
    ONE,
    Quaternion,
    combine_simplex,
    qabs,
    qabs2,
    qconj,
    qmul,
    split_simplex,
)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
quats = st.tuples(finite, finite, finite, finite).map(lambda t: Quaternion(*t))


def test_unit_table():
    assert I * J == K
    assert J * K == I
    assert K * I == J
    assert J * I == -K
    assert K * J == -I
    assert I * K == -J
    for u in (I, J, K):
        assert u * u == -ONE
    assert I * J * K == -ONE


def test_examples():
    assert (ONE + I) * (ONE + J) == Quaternion(1, 1, 1, 1)
    assert Quaternion(1, 1, 1, 1).conj() == Quaternion(1, -1, -1, -1)
    assert Quaternion(5).conj() == Quaternion(5)
    assert abs(Quaternion(1, 1, 1, 1)) == 2.0
    assert Quaternion(1, 2, 3, 4).split() == (1 + 2j, 3 + 4j)
    assert J.split() == (0, 1)


def test_identity_and_double_conjugate(rng):
    q = rng.standard_normal((50, 4))
    np.testing.assert_array_equal(qmul(ONE.as_array(), q), q)
    np.testing.assert_array_equal(qmul(q, ONE.as_array()), q)
    np.testing.assert_array_equal(qconj(qconj(q)), q)


def test_modulus_multiplicative(rng):
    p = rng.standard_normal((1000, 4))
    q = rng.standard_normal((1000, 4))
    rel = np.abs(qabs(qmul(p, q)) - qabs(p) * qabs(q)) / (qabs(p) * qabs(q))
    assert rel.max() < 1e-12


def test_conjugate_modulus(rng):
    q = rng.standard_normal((100, 4))
    np.testing.assert_array_equal(qabs(q), qabs(qconj(q)))


def test_simplex_round_trip(rng):
    q = rng.standard_normal((1000, 4))
    a, b = split_simplex(q)
    np.testing.assert_array_equal(combine_simplex(a, b), q)
    # a + b*j rebuilt with the Hamilton product
    a_q = np.stack([a.real, a.imag, 0 * a.real, 0 * a.real], axis=-1)
    b_q = np.stack([b.real, b.imag, 0 * b.real, 0 * b.real], axis=-1)
    np.testing.assert_allclose(a_q + qmul(b_q, J.as_array()), q, atol=0, rtol=0)


def test_nan_propagates():
    out = qmul([np.nan, 0, 0, 0], [1, 0, 0, 0])
    assert np.isnan(out[0])


def test_rejects_wrong_trailing_axis():
    with pytest.raises(ValueError):
        qmul(np.zeros(3), np.zeros(4))


@settings(max_examples=200, deadline=None)
@given(quats, quats, quats)
def test_associative_on_unit_triples(p, q, r):
    vals = []
    for x in (p, q, r):
        if abs(x) == 0:
            return
        vals.append(x.as_array() / abs(x))
    p, q, r = vals
    np.testing.assert_allclose(qmul(qmul(p, q), r), qmul(p, qmul(q, r)), atol=1e-12, rtol=0)


@settings(max_examples=200, deadline=None)
@given(quats, quats)
def test_conjugate_is_anti_involution(p, q):
    lhs = qconj(qmul(p.as_array(), q.as_array()))
    rhs = qmul(qconj(q.as_array()), qconj(p.as_array()))
    scale = max(1.0, abs(p) * abs(q))
    np.testing.assert_allclose(lhs, rhs, atol=1e-13 * scale, rtol=0)


@settings(max_examples=200, deadline=None)
@given(quats)
def test_norm_product_is_real(q):
    arr = q.as_array()
    prod = qmul(arr, qconj(arr))
    n2 = qabs2(arr)
    np.testing.assert_allclose(prod[1:], 0, atol=1e-13 * max(n2, 1))
    assert prod[0] == pytest.approx(n2, rel=1e-13, abs=1e-300)


@settings(max_examples=100, deadline=None)
@given(quats, quats, st.floats(-10, 10), st.floats(-10, 10))
def test_real_bilinear(p, q, a, b):
    r = Quaternion(0.3, -1.2, 0.7, 2.0)
    lhs = qmul(a * p.as_array() + b * q.as_array(), r.as_array())
    rhs = a * qmul(p.as_array(), r.as_array()) + b * qmul(q.as_array(), r.as_array())
    scale = max(1.0, (abs(a) * abs(p) + abs(b) * abs(q)) * abs(r))
    np.testing.assert_allclose(lhs, rhs, atol=1e-12 * scale, rtol=0)


def test_qmul_matches_table_oracle(rng):
    from oracles import hamilton

    p = rng.standard_normal((200, 4))
    q = rng.standard_normal((200, 4))
    expected = np.array([hamilton(a, b) for a, b in zip(p, q)])
    np.testing.assert_allclose(qmul(p, q), expected, rtol=0, atol=1e-15)
