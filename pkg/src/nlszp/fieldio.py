"""Binary snapshot format for fields (.zfld).

Layout, all little-endian:

    magic   4 bytes  b"ZFLD"
    version u16      1
    dim     u8
    n       u32
    L       f64
    payload n^dim complex values as interleaved (re, im) f64, row-major
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .spectral import Field, Grid

_MAGIC = b"ZFLD"
_VERSION = 1
_HEADER = struct.Struct("<4sHBId")


class FieldIOError(IOError):
    pass


def write_zfld(path: str | Path, f: Field) -> None:
    payload = np.empty(f.grid.num_points * 2, dtype="<f8")
    flat = f.values.reshape(-1)
    payload[0::2] = flat.real
    payload[1::2] = flat.imag
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, _VERSION, f.grid.dim, f.grid.n, f.grid.box_length))
        fh.write(payload.tobytes())


def read_zfld(path: str | Path) -> Field:
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise FieldIOError(f"{path}: truncated header")
        magic, version, dim, n, box_length = _HEADER.unpack(header)
        if magic != _MAGIC:
            raise FieldIOError(f"{path}: bad magic {magic!r}")
        if version != _VERSION:
            raise FieldIOError(f"{path}: unsupported version {version}")
        grid = Grid(dim=dim, n=n, box_length=box_length)
        raw = fh.read(grid.num_points * 16)
        if len(raw) != grid.num_points * 16:
            raise FieldIOError(f"{path}: truncated payload")
    payload = np.frombuffer(raw, dtype="<f8")
    values = payload[0::2] + 1j * payload[1::2]
    return Field(grid, values)
