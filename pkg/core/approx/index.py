"""Precomputed walk index for SpeedPPR.

Every node ``v`` with out-degree ``d_v > 0`` stores the terminals of ``d_v``
α-random walks started at ``v``; dead-ends store nothing.  A walk built here
that reaches a dead-end jumps back to the node it started from.

File layout (little-endian)::

    b"PPRW"  u8 version=1  u8 rng_id  f64 alpha  u64 seed  u64 n  u64 total
    (n + 1) x u64 offsets
    total x u32 endpoints
"""

from __future__ import annotations

import logging
import struct
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from core.errors import IndexFormatError
from core.graph import Graph

from .walks import walk_terminals

logger = logging.getLogger(__name__)

MAGIC = b"PPRW"
VERSION = 1
RNG_PCG64 = 1
_HEADER = struct.Struct("<4sBBdQQQ")


@dataclass(frozen=True, eq=False)
class WalkIndex:
    alpha: float
    seed: int
    offsets: np.ndarray
    endpoints: np.ndarray
    rng_id: int = RNG_PCG64

    @property
    def n(self) -> int:
        return int(self.offsets.shape[0] - 1)

    @property
    def total_walks(self) -> int:
        return int(self.endpoints.shape[0])

    @property
    def nbytes(self) -> int:
        """Size of the serialised index."""

        return _HEADER.size + 8 * self.offsets.shape[0] + 4 * self.endpoints.shape[0]

    def walks_of(self, v: int) -> np.ndarray:
        return self.endpoints[self.offsets[v] : self.offsets[v + 1]]

    def stats(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "total_walks": self.total_walks,
            "bytes": self.nbytes,
            "alpha": self.alpha,
            "seed": self.seed,
        }


def build_index(graph: Graph, alpha: float, seed: int) -> WalkIndex:
    """Simulate ``d_v`` walks from every node and collect their terminals."""

    started = time.perf_counter_ns()
    rng = np.random.default_rng(seed)
    origins = graph.edge_sources.astype(np.int64)
    endpoints = walk_terminals(graph, origins, origins, alpha, rng).astype(np.uint32)
    index = WalkIndex(alpha=alpha, seed=seed, offsets=graph.out_offsets.copy(), endpoints=endpoints)
    logger.info(
        "built walk index: %d walks, %d bytes in %.2fs",
        index.total_walks, index.nbytes, (time.perf_counter_ns() - started) / 1e9,
    )
    return index


def save_index(index: WalkIndex, path: Path | str) -> int:
    """Write ``index`` to ``path`` and return the number of bytes written."""

    payload = b"".join(
        [
            _HEADER.pack(MAGIC, VERSION, index.rng_id, index.alpha, index.seed, index.n, index.total_walks),
            index.offsets.astype("<u8").tobytes(),
            index.endpoints.astype("<u4").tobytes(),
        ]
    )
    Path(path).write_bytes(payload)
    logger.info("wrote walk index %s (%d bytes)", path, len(payload))
    return len(payload)


def load_index(path: Path | str, graph: Optional[Graph] = None) -> WalkIndex:
    """Read an index written by :func:`save_index`.

    With ``graph`` the slice lengths are checked against its out-degrees.
    """

    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise IndexFormatError(f"{path}: truncated walk index header")
    magic, version, rng_id, alpha, seed, n, total = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise IndexFormatError(f"{path}: not a walk index (magic {magic!r})")
    if version != VERSION:
        raise IndexFormatError(f"{path}: unsupported walk index version {version}")
    if rng_id != RNG_PCG64:
        raise IndexFormatError(f"{path}: unknown rng id {rng_id}")
    expected = _HEADER.size + 8 * (n + 1) + 4 * total
    if len(data) != expected:
        raise IndexFormatError(f"{path}: expected {expected} bytes, found {len(data)}")
    offsets = np.frombuffer(data, dtype="<u8", count=n + 1, offset=_HEADER.size).astype(np.int64)
    endpoints = np.frombuffer(data, dtype="<u4", count=total, offset=_HEADER.size + 8 * (n + 1)).astype(
        np.uint32
    )
    if offsets[0] != 0 or offsets[-1] != total or np.any(np.diff(offsets) < 0):
        raise IndexFormatError(f"{path}: offsets are not a valid prefix sum")
    if total and int(endpoints.max()) >= n:
        raise IndexFormatError(f"{path}: endpoint outside [0, {n})")
    if graph is not None:
        if n != graph.n:
            raise IndexFormatError(f"{path}: index has {n} nodes, graph has {graph.n}")
        if not np.array_equal(np.diff(offsets), graph.out_degree):
            raise IndexFormatError(f"{path}: walk counts do not match the graph's out-degrees")
    return WalkIndex(alpha=alpha, seed=seed, offsets=offsets, endpoints=endpoints, rng_id=rng_id)


__all__ = ["MAGIC", "VERSION", "WalkIndex", "build_index", "load_index", "save_index"]
