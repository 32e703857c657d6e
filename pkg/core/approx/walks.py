r"""α-random walks.

A walk stops at its current node with probability ``α``; otherwise it moves
to an out-neighbour chosen uniformly, or jumps back to its source when the
current node is a dead-end.  Neighbour choice uses
``Generator.integers(0, d)``, which draws bounded integers without modulo
bias.

Walks are simulated in batches: every live walk advances one step per round,
so a batch costs ``O(expected length)`` vectorised rounds.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol, Tuple, Union

import numpy as np

from core.graph import Graph

if TYPE_CHECKING:  # pragma: no cover - typing only
    from .index import WalkIndex


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError("random walks need alpha in (0, 1)")


def random_walk(graph: Graph, start: int, s: int, alpha: float, rng: np.random.Generator) -> int:
    """Simulate one walk from ``start`` for a query from ``s``; return where it stops."""

    _check_alpha(alpha)
    v = start
    while rng.random() >= alpha:
        neighbors, degree = graph.effective_out(v, s)
        v = int(neighbors[rng.integers(degree)])
    return v


def walk_terminals(
    graph: Graph,
    starts: np.ndarray,
    jump: Union[int, np.ndarray],
    alpha: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Terminal node of one walk per entry of ``starts``.

    ``jump`` is where a walk goes from a dead-end: the query source, or one
    target per walk.
    """

    _check_alpha(alpha)
    position = np.array(starts, dtype=np.int64)
    targets = np.broadcast_to(np.asarray(jump, dtype=np.int64), position.shape)
    alive = np.arange(position.shape[0])
    offsets = graph.out_offsets
    degree = graph.out_degree
    while alive.shape[0]:
        alive = alive[rng.random(alive.shape[0]) >= alpha]
        if not alive.shape[0]:
            break
        here = position[alive]
        step = targets[alive].copy()
        movable = degree[here] > 0
        if movable.any():
            picks = rng.integers(0, degree[here[movable]])
            step[movable] = graph.out_neighbors[offsets[here[movable]] + picks]
        position[alive] = step
    return position


class WalkSource(Protocol):
    """Supplier of walk terminals for the Monte Carlo phase."""

    alpha: float

    def sample(self, nodes: np.ndarray, counts: np.ndarray, s: int) -> Tuple[np.ndarray, int]:
        """Terminals of ``counts[i]`` walks from each ``nodes[i]``, grouped in order.

        Returns the terminals and how many of them were freshly simulated.
        """
        ...


class FreshWalks:
    """Simulates every requested walk with ``rng``."""

    def __init__(self, graph: Graph, alpha: float, rng: np.random.Generator) -> None:
        self.graph = graph
        self.alpha = alpha
        self.rng = rng

    def sample(self, nodes: np.ndarray, counts: np.ndarray, s: int) -> Tuple[np.ndarray, int]:
        starts = np.repeat(np.asarray(nodes, dtype=np.int64), counts)
        return walk_terminals(self.graph, starts, s, self.alpha, self.rng), int(starts.shape[0])


class IndexedWalks:
    """Serves stored endpoints first, in stored order, then falls back to fresh walks.

    The fallback only fires when a node is asked for more walks than it has
    stored, which after refinement happens for dead-ends alone.
    """

    def __init__(self, index: "WalkIndex", fallback: FreshWalks) -> None:
        self.index = index
        self.alpha = index.alpha
        self.fallback = fallback

    def sample(self, nodes: np.ndarray, counts: np.ndarray, s: int) -> Tuple[np.ndarray, int]:
        nodes = np.asarray(nodes, dtype=np.int64)
        counts = np.asarray(counts, dtype=np.int64)
        total = int(counts.sum())
        offsets = self.index.offsets
        stored = np.repeat(offsets[nodes + 1] - offsets[nodes], counts)
        rank = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        from_index = rank < stored
        terminals = np.empty(total, dtype=np.int64)
        slots = np.repeat(offsets[nodes], counts)[from_index] + rank[from_index]
        terminals[from_index] = self.index.endpoints[slots]
        missing = ~from_index
        fresh = int(missing.sum())
        if fresh:
            starts = np.repeat(nodes, counts)[missing]
            terminals[missing] = walk_terminals(
                self.fallback.graph, starts, s, self.fallback.alpha, self.fallback.rng
            )
        return terminals, fresh


__all__ = ["FreshWalks", "IndexedWalks", "WalkSource", "random_walk", "walk_terminals"]
