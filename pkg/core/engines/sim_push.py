"""Forward Push with simultaneous pushes.

Every node holding residue pushes in each iteration, and all pushes of an
iteration read the residues left by the previous one (double buffering).
Iteration ``j`` therefore reproduces Power Iteration's ``γ^(j)`` and estimate
up to floating-point reordering.
"""

from __future__ import annotations

import logging
import time
from typing import Iterator, Optional

import numpy as np

from core.graph import Graph

from .state import CheckpointRecorder, PPRVector, PushState, check_alpha

logger = logging.getLogger(__name__)


def iterate_sim_push(graph: Graph, s: int, alpha: float) -> Iterator[PushState]:
    """Yield the state after each round of simultaneous pushes, forever."""

    state = PushState.initial(graph, s)
    degree = graph.out_degree
    effective = graph.effective_degree
    targets = graph.out_neighbors.astype(np.int64)
    sources = graph.edge_sources
    while True:
        snapshot = state.residue
        active = snapshot > 0.0
        state.reserve[active] += alpha * snapshot[active]
        share = np.zeros(graph.n)
        np.divide((1.0 - alpha) * snapshot, degree, out=share, where=active & (degree > 0))
        fresh = np.bincount(targets, weights=share[sources], minlength=graph.n)
        fresh[s] += (1.0 - alpha) * snapshot[active & (degree == 0)].sum()
        state.residue = fresh
        state.r_sum -= alpha * float(snapshot[active].sum())
        state.edge_push_count += int(effective[active].sum())
        yield state


def sim_forward_push(
    graph: Graph,
    s: int,
    alpha: float,
    lam: float,
    recorder: Optional[CheckpointRecorder] = None,
) -> PPRVector:
    """Run simultaneous pushes until ``r_sum ≤ lam``."""

    check_alpha(alpha)
    if not 0.0 < lam <= 1.0:
        raise ValueError("lambda must lie in (0, 1]")
    started = time.perf_counter_ns()
    if recorder is not None:
        recorder.start()
    state = PushState.initial(graph, s)
    iterations = 0
    if state.r_sum > lam:
        for state in iterate_sim_push(graph, s, alpha):
            iterations += 1
            state.resync()
            if recorder is not None:
                recorder.maybe_record(state)
            if state.r_sum <= lam:
                break
    logger.debug("simfwdpush s=%d: %d iterations, r_sum=%.3e", s, iterations, state.r_sum)
    return PPRVector.from_state(
        state,
        alpha,
        "simfwdpush",
        wall_time_ns=time.perf_counter_ns() - started,
        checkpoints=recorder.checkpoints if recorder is not None else [],
        details={"iterations": iterations, "lambda": lam},
    )


__all__ = ["iterate_sim_push", "sim_forward_push"]
