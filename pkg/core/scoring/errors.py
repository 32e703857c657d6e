"""Accuracy metrics for SSPPR estimates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from core.engines.state import PPRVector
from core.oracle import DensePPR

Vector = Union[np.ndarray, PPRVector, DensePPR]


@dataclass(frozen=True)
class ErrorReport:
    """Error of one estimate against the truth.

    ``violated_nodes`` counts nodes with ``π ≥ μ`` whose relative error
    exceeds ``ε``; it is ``0`` when no ``ε`` is given.
    """

    l1_error: float
    max_rel_error_above_mu: float
    num_nodes_above_mu: int
    violated_nodes: int


def _unpack(vector: Vector) -> tuple[np.ndarray, int | None]:
    if isinstance(vector, np.ndarray):
        return vector, None
    return vector.estimates, vector.source


def _pair(est: Vector, truth: Vector) -> tuple[np.ndarray, np.ndarray]:
    a, source_a = _unpack(est)
    b, source_b = _unpack(truth)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if source_a is not None and source_b is not None and source_a != source_b:
        raise ValueError(f"source mismatch: {source_a} vs {source_b}")
    return np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)


def l1_error(est: Vector, truth: Vector) -> float:
    """``Σ_v |est[v] − truth[v]|``."""

    a, b = _pair(est, truth)
    return float(np.abs(a - b).sum())


def error_report(est: Vector, truth: Vector, epsilon: float | None, mu: float) -> ErrorReport:
    a, b = _pair(est, truth)
    above = b >= mu
    if above.any():
        relative = np.abs(a[above] - b[above]) / b[above]
        max_rel = float(relative.max())
        violated = int((relative > epsilon).sum()) if epsilon is not None else 0
    else:
        max_rel, violated = 0.0, 0
    return ErrorReport(
        l1_error=float(np.abs(a - b).sum()),
        max_rel_error_above_mu=max_rel,
        num_nodes_above_mu=int(above.sum()),
        violated_nodes=violated,
    )


__all__ = ["ErrorReport", "error_report", "l1_error"]
