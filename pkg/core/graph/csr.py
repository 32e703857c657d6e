r"""Immutable CSR out-adjacency and the dead-end convention.

Nodes are ``0 .. n-1`` and their adjacency lists are concatenated in id order
into a single ``out_neighbors`` array, so a sequential pass over the nodes is
also a sequential pass over the edges.

A node without out-edges (a *dead-end*) is treated as if it had a single edge
to the query source ``s``: an :math:`\alpha`-random walk that reaches it jumps
back to ``s``.  :meth:`Graph.effective_out` is the one place this rule lives;
the vectorised engines use :attr:`Graph.effective_degree` which encodes the
same rule as ``max(d_v, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple

import numpy as np
import scipy.sparse as sp

from core.errors import GraphFormatError

NODE_DTYPE = np.uint32
OFFSET_DTYPE = np.int64
MAX_NODES = int(np.iinfo(NODE_DTYPE).max) + 1


@dataclass(frozen=True, eq=False)
class Graph:
    """Directed graph in compressed sparse row form.

    Parameters
    ----------
    out_offsets:
        ``n + 1`` non-decreasing offsets into ``out_neighbors``.
    out_neighbors:
        ``m`` node ids; node ``v``'s out-neighbours are
        ``out_neighbors[out_offsets[v]:out_offsets[v + 1]]``.
    original_ids:
        Optional id each node had in the source file before relabelling.

    The arrays are validated on construction and made read-only, so a graph
    can be shared by concurrent queries.
    """

    out_offsets: np.ndarray
    out_neighbors: np.ndarray
    original_ids: Optional[np.ndarray] = field(default=None)

    def __post_init__(self) -> None:
        offsets = np.ascontiguousarray(self.out_offsets, dtype=OFFSET_DTYPE)
        neighbors = np.ascontiguousarray(self.out_neighbors, dtype=NODE_DTYPE)
        _validate(offsets, neighbors)
        offsets.setflags(write=False)
        neighbors.setflags(write=False)
        object.__setattr__(self, "out_offsets", offsets)
        object.__setattr__(self, "out_neighbors", neighbors)
        if self.original_ids is not None:
            ids = np.asarray(self.original_ids, dtype=np.int64)
            if ids.shape != (offsets.shape[0] - 1,):
                raise GraphFormatError("original_ids must have one entry per node")
            ids.setflags(write=False)
            object.__setattr__(self, "original_ids", ids)

    # ------------------------------------------------------------------
    # sizes and degrees

    @property
    def n(self) -> int:
        return int(self.out_offsets.shape[0] - 1)

    @property
    def m(self) -> int:
        return int(self.out_neighbors.shape[0])

    @cached_property
    def out_degree(self) -> np.ndarray:
        degree = np.diff(self.out_offsets)
        degree.setflags(write=False)
        return degree

    @cached_property
    def effective_degree(self) -> np.ndarray:
        """``d_v`` with dead-ends counted as one (their edge to the source)."""

        degree = np.maximum(self.out_degree, 1)
        degree.setflags(write=False)
        return degree

    @cached_property
    def dead_ends(self) -> np.ndarray:
        """Sorted ids of nodes with ``d_v = 0``."""

        nodes = np.flatnonzero(self.out_degree == 0)
        nodes.setflags(write=False)
        return nodes

    @property
    def effective_edges(self) -> int:
        """Sum of effective degrees, ``m`` plus one per dead-end."""

        return self.m + int(self.dead_ends.shape[0])

    @cached_property
    def edge_sources(self) -> np.ndarray:
        """Source node of every entry of ``out_neighbors``."""

        sources = np.repeat(np.arange(self.n, dtype=np.int64), self.out_degree)
        sources.setflags(write=False)
        return sources

    @cached_property
    def transition(self) -> sp.csr_matrix:
        """Row-stochastic ``P`` restricted to non-dead-end rows.

        Dead-end rows are left empty; their mass is routed to the source by
        the caller since it depends on the query.  Parallel edges add up.
        """

        degree = self.out_degree
        weights = np.zeros(self.n, dtype=np.float64)
        np.divide(1.0, degree, out=weights, where=degree > 0)
        return sp.csr_matrix(
            (weights[self.edge_sources], self.out_neighbors.astype(np.int64), self.out_offsets.copy()),
            shape=(self.n, self.n),
        )

    # ------------------------------------------------------------------
    # adjacency

    def out_neighbors_of(self, v: int) -> np.ndarray:
        return self.out_neighbors[self.out_offsets[v] : self.out_offsets[v + 1]]

    def is_dead_end(self, v: int) -> bool:
        return bool(self.out_offsets[v] == self.out_offsets[v + 1])

    def effective_out(self, v: int, s: int) -> Tuple[np.ndarray, int]:
        """Return ``(neighbours, degree)`` of ``v`` for a query from ``s``.

        A dead-end returns ``([s], 1)``; the list is never empty.
        """

        self._check_node(v)
        self._check_node(s)
        neighbors = self.out_neighbors_of(v)
        if neighbors.shape[0] == 0:
            return np.array([s], dtype=NODE_DTYPE), 1
        return neighbors, int(neighbors.shape[0])

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"node {v} outside [0, {self.n})")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, dead_ends={self.dead_ends.shape[0]})"


def _validate(offsets: np.ndarray, neighbors: np.ndarray) -> None:
    if offsets.ndim != 1 or offsets.shape[0] < 2:
        raise GraphFormatError("graph must have at least one node")
    n = offsets.shape[0] - 1
    if n > MAX_NODES:
        raise GraphFormatError(f"{n} nodes exceed the 32-bit id range")
    if offsets[0] != 0:
        raise GraphFormatError("out_offsets[0] must be 0")
    if np.any(np.diff(offsets) < 0):
        raise GraphFormatError("out_offsets must be non-decreasing")
    if offsets[-1] != neighbors.shape[0]:
        raise GraphFormatError(
            f"out_offsets[n]={offsets[-1]} does not match m={neighbors.shape[0]}"
        )
    if neighbors.shape[0] and int(neighbors.max()) >= n:
        raise GraphFormatError("out_neighbors holds ids outside [0, n)")


def from_edges(src: np.ndarray, dst: np.ndarray, n: int) -> Graph:
    """Build a :class:`Graph` from relabelled edge arrays.

    Edges are grouped by source with a stable sort, so each adjacency list
    keeps the input order, duplicates and self-loops included.
    """

    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    if src.shape != dst.shape:
        raise GraphFormatError("source and target arrays differ in length")
    order = np.argsort(src, kind="stable")
    counts = np.bincount(src, minlength=n)
    offsets = np.zeros(n + 1, dtype=OFFSET_DTYPE)
    np.cumsum(counts, out=offsets[1:])
    return Graph(out_offsets=offsets, out_neighbors=dst[order])


__all__ = ["Graph", "from_edges", "NODE_DTYPE", "OFFSET_DTYPE"]
