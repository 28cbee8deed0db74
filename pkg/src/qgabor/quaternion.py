"""Quaternion arithmetic on numpy arrays.

A quaternion array is any float64 array whose trailing axis has length 4,
holding the components ``(q1, q2, q3, q4) = (scalar, i, j, k)``.  All
functions broadcast over leading axes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Quaternion",
    "as_quaternion_array",
    "qmul",
    "qconj",
    "qabs",
    "qabs2",
    "split_simplex",
    "combine_simplex",
    "ONE",
    "I",
    "J",
    "K",
]


def as_quaternion_array(q) -> np.ndarray:
    """Return ``q`` as a float64 array with a trailing axis of length 4."""
    if isinstance(q, Quaternion):
        return q.as_array()
    arr = np.asarray(q, dtype=np.float64)
    if arr.ndim == 0 or arr.shape[-1] != 4:
        raise ValueError(
            f"quaternion arrays need a trailing axis of length 4, got shape {arr.shape}"
        )
    return arr


def qmul(p, q) -> np.ndarray:
    """Hamilton product ``p * q``, broadcasting over leading axes."""
    p = as_quaternion_array(p)
    q = as_quaternion_array(q)
    a1, b1, c1, d1 = np.moveaxis(p, -1, 0)
    a2, b2, c2, d2 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ],
        axis=-1,
    )


def qconj(q) -> np.ndarray:
    q = as_quaternion_array(q)
    out = -q
    out[..., 0] = q[..., 0]
    return out


def qabs2(q) -> np.ndarray:
    """Squared modulus ``q1² + q2² + q3² + q4²``."""
    q = as_quaternion_array(q)
    return np.einsum("...c,...c->...", q, q)


def qabs(q) -> np.ndarray:
    return np.sqrt(qabs2(q))


def split_simplex(q) -> tuple[np.ndarray, np.ndarray]:
    """Split ``q = a + b*j`` with ``a, b`` in span{1, i}.

    Returns two complex arrays where the Python imaginary unit stands for
    the quaternion unit i: ``a = q1 + i q2`` and ``b = q3 + i q4``.
    """
    q = as_quaternion_array(q)
    return q[..., 0] + 1j * q[..., 1], q[..., 2] + 1j * q[..., 3]


def combine_simplex(a, b) -> np.ndarray:
    """Inverse of :func:`split_simplex`: build ``a + b*j``."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    a, b = np.broadcast_arrays(a, b)
    return np.stack([a.real, a.imag, b.real, b.imag], axis=-1)


@dataclass(frozen=True)
class Quaternion:
    """A single quaternion ``q1 + q2 i + q3 j + q4 k``."""

    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0
    q4: float = 0.0

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        arr = as_quaternion_array(arr)
        if arr.shape != (4,):
            raise ValueError(f"expected shape (4,), got {arr.shape}")
        return cls(*(float(x) for x in arr))

    def as_array(self) -> np.ndarray:
        return np.array([self.q1, self.q2, self.q3, self.q4], dtype=np.float64)

    def __iter__(self):
        return iter((self.q1, self.q2, self.q3, self.q4))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Quaternion.from_array(self.as_array() + other.as_array())

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Quaternion.from_array(self.as_array() - other.as_array())

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Quaternion(-self.q1, -self.q2, -self.q3, -self.q4)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Quaternion.from_array(qmul(self.as_array(), other.as_array()))

    def __rmul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __abs__(self) -> float:
        return float(qabs(self.as_array()))

    def conj(self) -> "Quaternion":
        return Quaternion(self.q1, -self.q2, -self.q3, -self.q4)

    def split(self) -> tuple[complex, complex]:
        return complex(self.q1, self.q2), complex(self.q3, self.q4)

    def __repr__(self) -> str:
        return f"Quaternion({self.q1!r}, {self.q2!r}, {self.q3!r}, {self.q4!r})"


def _coerce(x):
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (int, float, np.floating, np.integer)):
        return Quaternion(float(x))
    return NotImplemented


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
