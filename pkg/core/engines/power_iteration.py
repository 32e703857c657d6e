r"""Power Iteration.

Iteration ``j`` settles ``α·γ^(j)`` into the estimate and propagates the rest,
``γ^(j+1) = (1−α)·γ^(j)·P``, where a dead-end row of ``P`` sends its mass to
the source.  On dead-end-free graphs ``‖γ^(j)‖₁ = (1−α)^j`` exactly, so the
loop runs ``⌈ln(1/λ) / ln(1/(1−α))⌉`` times.
"""

from __future__ import annotations

import logging
import time
from typing import Iterator, Optional

import numpy as np

from core.graph import Graph

from .state import CheckpointRecorder, PPRVector, PushState, check_alpha

logger = logging.getLogger(__name__)


def iterate_power(graph: Graph, s: int, alpha: float) -> Iterator[PushState]:
    """Yield the state after each iteration, forever.

    ``reserve`` holds the estimate and ``residue`` holds ``γ``.  Each
    iteration costs one pass over all effective edges.
    """

    state = PushState.initial(graph, s)
    transposed = graph.transition.T.tocsr()
    dead_ends = graph.dead_ends
    cost = graph.effective_edges
    while True:
        gamma = state.residue
        state.reserve += alpha * gamma
        spread = transposed @ gamma
        spread[s] += gamma[dead_ends].sum()
        state.residue = (1.0 - alpha) * spread
        state.r_sum = float(state.residue.sum())
        state.edge_push_count += cost
        yield state


def power_iteration(
    graph: Graph,
    s: int,
    alpha: float,
    lam: float,
    recorder: Optional[CheckpointRecorder] = None,
) -> PPRVector:
    """Iterate until ``‖γ‖₁ ≤ lam``."""

    check_alpha(alpha)
    if not 0.0 < lam <= 1.0:
        raise ValueError("lambda must lie in (0, 1]")
    started = time.perf_counter_ns()
    if recorder is not None:
        recorder.start()
    state = PushState.initial(graph, s)
    iterations = 0
    if state.r_sum > lam:
        for state in iterate_power(graph, s, alpha):
            iterations += 1
            if recorder is not None:
                recorder.maybe_record(state)
            if state.r_sum <= lam:
                break
    logger.debug("powitr s=%d: %d iterations, r_sum=%.3e", s, iterations, state.r_sum)
    return PPRVector.from_state(
        state,
        alpha,
        "powitr",
        wall_time_ns=time.perf_counter_ns() - started,
        checkpoints=recorder.checkpoints if recorder is not None else [],
        details={"iterations": iterations, "lambda": lam},
    )


def iterations_needed(alpha: float, lam: float) -> int:
    """Iteration count on a dead-end-free graph, ``⌈ln(1/λ)/ln(1/(1−α))⌉``."""

    return int(np.ceil(np.log(1.0 / lam) / np.log(1.0 / (1.0 - alpha))))


__all__ = ["iterate_power", "iterations_needed", "power_iteration"]
