"""Fixed-endianness binary state checkpoints.

Layout (little-endian): magic "DGBO", u32 version, u64 N, f64 L, f64 alpha,
f64 t, then N f64 samples.  Round-trips are bit-exact.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .spectral import Grid, RealField

MAGIC = b"DGBO"
VERSION = 1
_HEADER = struct.Struct("<4sIQddd")

__all__ = ["MAGIC", "VERSION", "write_checkpoint", "read_checkpoint"]


def write_checkpoint(path, field: RealField, alpha: float, t: float) -> None:
    grid = field.grid
    header = _HEADER.pack(MAGIC, VERSION, grid.n_points, grid.length, alpha, t)
    payload = np.ascontiguousarray(field.samples, dtype="<f8").tobytes()
    Path(path).write_bytes(header + payload)


def read_checkpoint(path):
    """Returns (field, alpha, t)."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError(f"{path}: truncated checkpoint")
    magic, version, n, length, alpha, t = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ValueError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise ValueError(f"{path}: unsupported version {version}")
    expected = _HEADER.size + 8 * n
    if len(raw) != expected:
        raise ValueError(f"{path}: expected {expected} bytes, found {len(raw)}")
    samples = np.frombuffer(raw, dtype="<f8", count=n, offset=_HEADER.size)
    field = RealField(Grid(int(n), float(length)), samples.astype(float))
    return field, float(alpha), float(t)
