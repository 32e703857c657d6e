"""Binary cache of a cleaned graph.

Layout (little-endian)::

    b"PPRG"  u8 version=1  u64 n  u64 m
    (n + 1) x u64 out_offsets
    m x u32 out_neighbors

The relabelling map is not part of the cache; node ids in the file are the
cleaned ids.
"""

from __future__ import annotations

import logging
import struct
from pathlib import Path

import numpy as np

from core.errors import GraphFormatError
from core.graph import Graph

logger = logging.getLogger(__name__)

MAGIC = b"PPRG"
VERSION = 1
_HEADER = struct.Struct("<4sBQQ")


def is_graph_cache(path: Path | str) -> bool:
    """``True`` when ``path`` starts with the cache magic bytes."""

    with open(path, "rb") as handle:
        return handle.read(len(MAGIC)) == MAGIC


def save_graph(graph: Graph, path: Path | str) -> int:
    """Write ``graph`` to ``path`` and return the number of bytes written."""

    payload = b"".join(
        [
            _HEADER.pack(MAGIC, VERSION, graph.n, graph.m),
            graph.out_offsets.astype("<u8").tobytes(),
            graph.out_neighbors.astype("<u4").tobytes(),
        ]
    )
    Path(path).write_bytes(payload)
    logger.info("wrote graph cache %s (%d bytes)", path, len(payload))
    return len(payload)


def load_graph_cache(path: Path | str) -> Graph:
    """Read a graph written by :func:`save_graph`."""

    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise GraphFormatError(f"{path}: truncated graph cache header")
    magic, version, n, m = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise GraphFormatError(f"{path}: not a graph cache (magic {magic!r})")
    if version != VERSION:
        raise GraphFormatError(f"{path}: unsupported graph cache version {version}")
    expected = _HEADER.size + 8 * (n + 1) + 4 * m
    if len(data) != expected:
        raise GraphFormatError(f"{path}: expected {expected} bytes, found {len(data)}")
    offsets = np.frombuffer(data, dtype="<u8", count=n + 1, offset=_HEADER.size)
    neighbors = np.frombuffer(data, dtype="<u4", count=m, offset=_HEADER.size + 8 * (n + 1))
    return Graph(out_offsets=offsets.astype(np.int64), out_neighbors=neighbors.astype(np.uint32))


__all__ = ["MAGIC", "VERSION", "is_graph_cache", "load_graph_cache", "save_graph"]
