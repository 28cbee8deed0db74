"""QSIG / QGAB binary codecs and minimal netpbm helpers.

QSIG layout::

    b"QSIG1\n"
    {"n1": .., "n2": .., "mode": "discrete"|"quadrature", "L1": .., "L2": ..}\n
    n1*n2*4 little-endian float64, row-major, components (q1, q2, q3, q4)

QGAB adds ``"window_norm_sq"`` to the header and stores ``n1*n2*n1*n2*4``
floats in index order ``(m1, m2, b1, b2)``.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .exceptions import (
    BadMagicError,
    CodecError,
    HeaderError,
    SizeMismatchError,
    TruncatedPayloadError,
)
from .gqft import GaborField4D
from .grid import GridGeometry, QSignal2D, QSpectrum2D

QSIG_MAGIC = b"QSIG1\n"
QGAB_MAGIC = b"QGAB1\n"
_RECORD = 4 * 8  # one quaternion

__all__ = [
    "encode_qsig",
    "decode_qsig",
    "encode_qgab",
    "decode_qgab",
    "read_qsig",
    "write_qsig",
    "read_qgab",
    "write_qgab",
    "read_netpbm",
    "encode_pgm",
    "render_spectrogram_slice",
]


def _encode(magic: bytes, header: dict, data: np.ndarray) -> bytes:
    line = json.dumps(header).encode("ascii") + b"\n"
    payload = np.ascontiguousarray(data, dtype="<f8").tobytes()
    return magic + line + payload


def _decode(magic: bytes, blob: bytes, required: tuple):
    blob = bytes(blob)
    if not blob.startswith(magic):
        raise BadMagicError(f"bad magic: expected {magic!r}, got {blob[:len(magic)]!r}")
    end = blob.find(b"\n", len(magic))
    if end < 0:
        raise TruncatedPayloadError("header line is not terminated")
    try:
        header = json.loads(blob[len(magic):end].decode("ascii"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise HeaderError(f"header is not valid JSON: {exc}") from None
    if not isinstance(header, dict):
        raise HeaderError("header must be a JSON object")
    missing = [k for k in required if k not in header]
    if missing:
        raise HeaderError(f"header lacks keys {missing}")
    try:
        geometry = GridGeometry.from_header(header)
    except (ValueError, TypeError) as exc:
        raise HeaderError(f"invalid geometry in header: {exc}") from None
    return header, geometry, blob[end + 1:]


def _payload(payload: bytes, count: int) -> np.ndarray:
    if len(payload) % _RECORD:
        raise TruncatedPayloadError(
            f"payload of {len(payload)} bytes ends inside a quaternion record"
        )
    if len(payload) != count * _RECORD:
        raise SizeMismatchError(
            f"header declares {count} quaternions, payload holds {len(payload) // _RECORD}"
        )
    return np.frombuffer(payload, dtype="<f8").astype(np.float64)


def encode_qsig(signal: QSignal2D) -> bytes:
    return _encode(QSIG_MAGIC, signal.geometry.to_header(), signal.data)


def decode_qsig(blob: bytes, spectrum: bool = False) -> QSignal2D:
    _, g, payload = _decode(QSIG_MAGIC, blob, ("n1", "n2", "mode"))
    data = _payload(payload, g.n1 * g.n2).reshape(g.n1, g.n2, 4)
    return (QSpectrum2D if spectrum else QSignal2D)(g, data)


def encode_qgab(field: GaborField4D) -> bytes:
    header = {**field.geometry.to_header(), "window_norm_sq": field.window_norm_sq}
    return _encode(QGAB_MAGIC, header, field.data)


def decode_qgab(blob: bytes) -> GaborField4D:
    header, g, payload = _decode(QGAB_MAGIC, blob, ("n1", "n2", "mode", "window_norm_sq"))
    n = g.n1 * g.n2
    data = _payload(payload, n * n).reshape(g.n1, g.n2, g.n1, g.n2, 4)
    return GaborField4D(g, header["window_norm_sq"], data)


def _read(path) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write(path, blob: bytes):
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(blob)
    os.replace(tmp, path)


def read_qsig(path, spectrum: bool = False) -> QSignal2D:
    return decode_qsig(_read(path), spectrum)


def write_qsig(path, signal: QSignal2D):
    _write(path, encode_qsig(signal))


def read_qgab(path) -> GaborField4D:
    return decode_qgab(_read(path))


def write_qgab(path, field: GaborField4D):
    _write(path, encode_qgab(field))


# -- netpbm ---------------------------------------------------------------------


def _tokens(blob: bytes, count: int):
    """First ``count`` whitespace-separated header tokens and the payload offset."""
    out, pos = [], 0
    while len(out) < count:
        while pos < len(blob) and blob[pos:pos + 1].isspace():
            pos += 1
        if blob[pos:pos + 1] == b"#":
            while pos < len(blob) and blob[pos:pos + 1] != b"\n":
                pos += 1
            continue
        start = pos
        while pos < len(blob) and not blob[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise CodecError("netpbm header ended early")
        out.append(blob[start:pos])
    return out, pos + 1  # one whitespace byte separates header and raster


def read_netpbm(path) -> np.ndarray:
    """Read a binary PGM (P5) or PPM (P6) as an ``(h, w, 3)`` uint8 array."""
    blob = _read(path)
    (magic, w, h, maxval), offset = _tokens(blob, 4)
    if magic not in (b"P5", b"P6"):
        raise BadMagicError(f"unsupported netpbm type {magic!r}")
    w, h, maxval = int(w), int(h), int(maxval)
    if maxval > 255:
        raise CodecError("only 8-bit netpbm images are supported")
    channels = 3 if magic == b"P6" else 1
    if len(blob) - offset < w * h * channels:
        raise TruncatedPayloadError(f"netpbm raster shorter than {w}x{h}x{channels} bytes")
    raster = np.frombuffer(blob, dtype=np.uint8, count=w * h * channels, offset=offset)
    img = raster.reshape(h, w, channels)
    if maxval != 255:
        img = np.rint(img.astype(float) * 255 / maxval).astype(np.uint8)
    return np.repeat(img, 3, axis=2) if channels == 1 else img.copy()


def encode_pgm(image: np.ndarray) -> bytes:
    image = np.asarray(image, dtype=np.uint8)
    h, w = image.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + image.tobytes()


_AXES = ("m1", "m2", "b1", "b2")


def render_spectrogram_slice(field: GaborField4D, fixed: dict) -> np.ndarray:
    """Grayscale image of ``|G|`` over the two axes not fixed in ``fixed``.

    ``fixed`` maps exactly two of ``m1, m2, b1, b2`` to indices.  The slice
    maximum maps to 255; an all-zero slice gives an all-zero image.
    """
    unknown = set(fixed) - set(_AXES)
    if unknown or len(fixed) != 2:
        raise ValueError(f"fix exactly two of {_AXES}, got {sorted(fixed)}")
    index = tuple(int(fixed[a]) if a in fixed else slice(None) for a in _AXES)
    mod = field.modulus()[index]
    peak = mod.max(initial=0.0)
    if peak == 0:
        return np.zeros(mod.shape, dtype=np.uint8)
    return np.rint(mod / peak * 255.0).astype(np.uint8)
