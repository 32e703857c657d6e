r"""Exact PPR on tiny graphs.

The oracle solves

.. math:: \pi_s (I - (1 - \alpha) P) = \alpha e_s

with a dense LU factorisation (partial pivoting).  ``P`` is assembled here
from the raw CSR arrays, independently of the engines, with every dead-end
row replaced by the indicator of ``s``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from core.config import ORACLE_MAX_NODES
from core.errors import ConsistencyError, OracleGuardError
from core.graph import Graph

logger = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-10


@dataclass(frozen=True)
class DensePPR:
    """Exact PPR vector of ``source``."""

    pi: np.ndarray
    source: int
    alpha: float

    @property
    def estimates(self) -> np.ndarray:
        return self.pi


def dense_transition(graph: Graph, s: int) -> np.ndarray:
    """Dense ``P`` for a query from ``s``; dead-end rows point at ``s``."""

    n = graph.n
    P = np.zeros((n, n), dtype=np.float64)
    offsets = graph.out_offsets
    for v in range(n):
        targets = graph.out_neighbors[offsets[v] : offsets[v + 1]]
        if targets.shape[0] == 0:
            P[v, s] = 1.0
        else:
            np.add.at(P[v], targets.astype(np.int64), 1.0 / targets.shape[0])
    return P


def exact_ppr(graph: Graph, s: int, alpha: float, max_nodes: int = ORACLE_MAX_NODES) -> DensePPR:
    """Solve the PPR linear system for source ``s``.

    Raises
    ------
    OracleGuardError
        If ``graph.n`` exceeds ``max_nodes``.
    ConsistencyError
        If the system is singular or the solution fails its residual check.
    """

    if graph.n > max_nodes:
        raise OracleGuardError(f"dense oracle limited to {max_nodes} nodes, graph has {graph.n}")
    if not 0 <= s < graph.n:
        raise ValueError(f"source {s} outside [0, {graph.n})")
    P = dense_transition(graph, s)
    A = np.eye(graph.n) - (1.0 - alpha) * P
    rhs = np.zeros(graph.n)
    rhs[s] = alpha
    try:
        pi = np.linalg.solve(A.T, rhs)
    except np.linalg.LinAlgError as exc:
        raise ConsistencyError(f"singular PPR system for alpha={alpha}") from exc
    pi = np.maximum(pi, 0.0)
    result = DensePPR(pi=pi, source=s, alpha=alpha)
    residual = residual_l1(graph, result)
    if residual > NORMALIZATION_TOLERANCE or abs(pi.sum() - 1.0) > NORMALIZATION_TOLERANCE:
        raise ConsistencyError(f"oracle residual {residual:.3e}, mass {pi.sum():.17g}")
    return result


def residual_l1(graph: Graph, result: DensePPR) -> float:
    """``‖π − α e_s − (1−α) π P‖₁`` for an oracle output."""

    P = dense_transition(graph, result.source)
    expected = (1.0 - result.alpha) * (result.pi @ P)
    expected[result.source] += result.alpha
    return float(np.abs(result.pi - expected).sum())


def power_series(graph: Graph, s: int, alpha: float, terms: int) -> np.ndarray:
    """Partial sum ``Σ_{j=0..terms} α (1−α)^j e_s P^j``."""

    P = dense_transition(graph, s)
    walk = np.zeros(graph.n)
    walk[s] = 1.0
    total = alpha * walk
    for _ in range(terms):
        walk = (1.0 - alpha) * (walk @ P)
        total += alpha * walk
    return total


__all__ = [
    "DensePPR",
    "dense_transition",
    "exact_ppr",
    "power_series",
    "residual_l1",
]
