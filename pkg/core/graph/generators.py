"""Small deterministic graphs for tests, examples and benchmarks."""

from __future__ import annotations

from typing import Iterable, Tuple

import numpy as np

from .csr import Graph, from_edges

# Five nodes with out-degrees 2, 4, 2, 3, 2 and no dead-ends.
FIVE_NODE_EDGES: Tuple[Tuple[int, int], ...] = (
    (0, 1), (0, 2),
    (1, 0), (1, 2), (1, 3), (1, 4),
    (2, 1), (2, 3),
    (3, 0), (3, 1), (3, 2),
    (4, 1), (4, 2),
)


def from_pairs(pairs: Iterable[Tuple[int, int]], n: int | None = None) -> Graph:
    """Build a graph on ``0 .. n-1`` from ``(src, dst)`` pairs without cleaning."""

    edges = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
    if n is None:
        n = int(edges.max()) + 1 if edges.size else 1
    return from_edges(edges[:, 0], edges[:, 1], n)


def five_node_graph() -> Graph:
    return from_pairs(FIVE_NODE_EDGES, n=5)


def two_cycle() -> Graph:
    return from_pairs([(0, 1), (1, 0)], n=2)


def self_loop() -> Graph:
    return from_pairs([(0, 0)], n=1)


def random_digraph(
    n: int,
    avg_degree: float,
    seed: int,
    dead_end_fraction: float = 0.0,
) -> Graph:
    """Seeded random digraph with uniformly chosen targets.

    Every node gets ``1 + Poisson(avg_degree - 1)`` out-edges except a
    ``dead_end_fraction`` share of nodes, which get none.  Node 0 is never a
    dead-end so it is always usable as a source with a real first push.
    """

    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    degree = 1 + rng.poisson(max(avg_degree - 1.0, 0.0), size=n)
    if dead_end_fraction > 0:
        dead = rng.random(n) < dead_end_fraction
        dead[0] = False
        degree[dead] = 0
    src = np.repeat(np.arange(n, dtype=np.int64), degree)
    dst = rng.integers(0, n, size=src.shape[0])
    return from_edges(src, dst, n)


__all__ = [
    "FIVE_NODE_EDGES",
    "five_node_graph",
    "from_pairs",
    "random_digraph",
    "self_loop",
    "two_cycle",
]
