"""Standalone CIFTFVEC writer/reader.

Implements the published byte layout directly so this package depends on the
core toolkit only through the file format:

    bytes 0..7   magic ASCII "CIFTFVEC"
    bytes 8..11  version u32 = 1 (little-endian)
    bytes 12..19 n u64
    bytes 20..27 d u64
    byte  28     dtype code u8 = 1 (float32)
    bytes 29..31 zero padding
    payload      n*d float32, row-major
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"CIFTFVEC"
VERSION = 1
DTYPE_FLOAT32 = 1
_HEADER = struct.Struct("<8sIQQB3x")


def write_fvec(path: str | Path, features: np.ndarray) -> None:
    features = np.ascontiguousarray(features, dtype="<f4")
    if features.ndim != 2 or features.shape[0] < 1 or features.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-d array, got shape {features.shape}")
    if not np.isfinite(features).all():
        raise ValueError("features contain NaN or Inf")
    n, d = features.shape
    header = _HEADER.pack(MAGIC, VERSION, n, d, DTYPE_FLOAT32)
    Path(path).write_bytes(header + features.tobytes())


def read_fvec(path: str | Path) -> np.ndarray:
    raw = Path(path).read_bytes()
    magic, version, n, d, dtype = _HEADER.unpack_from(raw)
    if magic != MAGIC or version != VERSION or dtype != DTYPE_FLOAT32:
        raise ValueError(f"{path} is not a CIFTFVEC v1 float32 file")
    payload = raw[_HEADER.size:]
    if len(payload) != n * d * 4:
        raise ValueError(f"{path}: payload length mismatch")
    return np.frombuffer(payload, dtype="<f4").reshape(n, d)
