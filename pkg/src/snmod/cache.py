"""Optional on-disk cache of generator matrices, one file per (kind, n, p, partition)."""
from __future__ import annotations

import os
import struct
from pathlib import Path
from typing import Optional

import numpy as np

from .config import get_config

__all__ = ["MAGIC", "FORMAT_VERSION", "cache_path", "store", "load", "write_file", "read_file"]

MAGIC = b"SNMOD"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<5sHHIIH")   # magic, version, n, p, dim, ngens


def cache_path(kind: str, n: int, p: int, lam) -> Optional[Path]:
    root = get_config().cache_dir
    if not root:
        return None
    parts = "-".join(str(x) for x in lam) or "empty"
    return Path(root) / f"{kind}_n{n}_p{p}_{parts}.bin"


def write_file(path: Path, n: int, p: int, mats) -> None:
    dim = mats[0].shape[0] if mats else 0
    dtype = np.uint8 if p < 256 else np.uint32
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    with open(tmp, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, FORMAT_VERSION, n, p, dim, len(mats)))
        for m in mats:
            fh.write(np.ascontiguousarray(m, dtype=dtype).tobytes())
    os.replace(tmp, path)


def read_file(path: Path, n: int, p: int):
    """Matrices from ``path``; None when absent, stale or for other parameters."""
    try:
        raw = path.read_bytes()
    except OSError:
        return None
    if len(raw) < _HEADER.size:
        return None
    magic, version, fn, fp, dim, ngens = _HEADER.unpack_from(raw)
    if magic != MAGIC or version != FORMAT_VERSION or fn != n or fp != p:
        return None
    dtype = np.uint8 if p < 256 else np.uint32
    size = dim * dim * np.dtype(dtype).itemsize
    if len(raw) != _HEADER.size + ngens * size:
        return None
    out = []
    for k in range(ngens):
        start = _HEADER.size + k * size
        m = np.frombuffer(raw, dtype=dtype, count=dim * dim, offset=start).astype(np.int64)
        out.append(m.reshape(dim, dim))
    return tuple(out)


def store(kind: str, n: int, p: int, lam, mats) -> None:
    path = cache_path(kind, n, p, lam)
    if path is not None:
        write_file(path, n, p, mats)


def load(kind: str, n: int, p: int, lam):
    path = cache_path(kind, n, p, lam)
    return None if path is None else read_file(path, n, p)
