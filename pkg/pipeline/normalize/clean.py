"""Dataset cleaning: drop isolated nodes and relabel the rest.

A node is isolated when it appears in no edge at all.  Surviving ids are
mapped to ``0 .. n-1`` in ascending order of their original value, so the
relabelling is a bijection that preserves relative order.  Dead-ends with
in-edges survive; duplicate edges and self-loops are kept as given.
"""

from __future__ import annotations

import logging
from typing import Tuple

import numpy as np

from core.errors import GraphFormatError
from core.graph import Graph, from_edges

logger = logging.getLogger(__name__)


def relabel(src: np.ndarray, dst: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return relabelled ``(src, dst)`` and the sorted original ids."""

    original_ids = np.unique(np.concatenate([src, dst]))
    return (
        np.searchsorted(original_ids, src),
        np.searchsorted(original_ids, dst),
        original_ids,
    )


def symmetrize(src: np.ndarray, dst: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Replace every pair ``(u, v)`` by the two arcs ``(u, v)`` and ``(v, u)``."""

    return np.concatenate([src, dst]), np.concatenate([dst, src])


def clean_edges(src: np.ndarray, dst: np.ndarray) -> Graph:
    """Build a cleaned :class:`Graph` from raw edge arrays."""

    if src.shape[0] == 0:
        raise GraphFormatError("graph is empty after cleaning")
    new_src, new_dst, original_ids = relabel(src, dst)
    n = int(original_ids.shape[0])
    graph = from_edges(new_src, new_dst, n)
    graph = Graph(
        out_offsets=graph.out_offsets,
        out_neighbors=graph.out_neighbors,
        original_ids=original_ids,
    )
    dropped = int(original_ids[-1]) + 1 - n
    logger.debug("cleaned graph: n=%d m=%d (%d unused ids below max)", n, graph.m, dropped)
    return graph


__all__ = ["clean_edges", "relabel", "symmetrize"]
