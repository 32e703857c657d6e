r"""Forward Push: arbitrary order, FIFO, and the refinement pass.

A node ``v`` is *active* w.r.t. ``r_max`` when ``r(s,v) > d_v·r_max``
(effective degree for dead-ends).  When no node is active every residue is
at most ``d_v·r_max``, so ``‖π̂ − π‖₁ ≤ r_sum ≤ m·r_max``.
"""

from __future__ import annotations

import logging
import time
from typing import Iterable, List, Optional

from core.graph import Graph

from . import kernels
from .state import CheckpointRecorder, PPRVector, PushState, check_alpha, push_once

logger = logging.getLogger(__name__)


def forward_push_arbitrary(
    graph: Graph,
    s: int,
    alpha: float,
    r_max: float,
    order: Iterable[int] = (),
    trace: Optional[List[PushState]] = None,
) -> PPRVector:
    """Forward Push with a caller-chosen push order.

    Nodes of ``order`` are pushed in turn when active (inactive ones are
    skipped); afterwards the lowest-id active node is pushed until none is
    left.  If ``trace`` is given, a copy of the state after each push is
    appended to it.
    """

    check_alpha(alpha)
    if r_max <= 0:
        raise ValueError("r_max must be positive")
    started = time.perf_counter_ns()
    state = PushState.initial(graph, s)

    def _push(v: int) -> None:
        push_once(state, v, graph, s, alpha)
        if trace is not None:
            trace.append(_copy(state))

    for v in order:
        if state.is_active(graph, v, r_max):
            _push(v)
    while True:
        active = (state.residue > graph.effective_degree * r_max).nonzero()[0]
        if active.shape[0] == 0:
            break
        _push(int(active[0]))
    return PPRVector.from_state(
        state, alpha, "fwdpush", wall_time_ns=time.perf_counter_ns() - started, details={"r_max": r_max}
    )


def fifo_forward_push(
    graph: Graph,
    s: int,
    alpha: float,
    r_max: float,
    lambda_stop: Optional[float] = None,
    recorder: Optional[CheckpointRecorder] = None,
) -> PPRVector:
    """FIFO-queue Forward Push.

    Without ``lambda_stop`` the queue is drained, leaving every node inactive.
    With it, pushing also stops as soon as ``r_sum ≤ lambda_stop``.
    """

    check_alpha(alpha)
    if r_max <= 0:
        raise ValueError("r_max must be positive")
    started = time.perf_counter_ns()
    if recorder is not None:
        recorder.start()
    state = PushState.initial(graph, s)
    state.enqueue_active(graph, r_max)
    stop = -1.0 if lambda_stop is None else lambda_stop
    status = state.run_fifo(graph, alpha, r_max, stop_r_sum=stop, recorder=recorder)
    state.resync()
    logger.debug(
        "fwdpush-fifo s=%d r_max=%.3e: status=%d pushes=%d r_sum=%.3e",
        s, r_max, status, state.edge_push_count, state.r_sum,
    )
    return PPRVector.from_state(
        state,
        alpha,
        "fwdpush-fifo",
        wall_time_ns=time.perf_counter_ns() - started,
        checkpoints=recorder.checkpoints if recorder is not None else [],
        details={"r_max": r_max, "drained": status == kernels.QUEUE_EMPTY},
    )


def refine(
    graph: Graph,
    s: int,
    alpha: float,
    r_max: float,
    state: PushState,
    recorder: Optional[CheckpointRecorder] = None,
) -> int:
    """Push until no node is active w.r.t. ``r_max``; return the edge pushes spent.

    Starting from ``r_sum ≤ m·r_max`` this costs at most ``m/α`` edge pushes.
    """

    check_alpha(alpha)
    if r_max <= 0:
        raise ValueError("r_max must be positive")
    before = state.edge_push_count
    state.clear_queue()
    state.enqueue_active(graph, r_max)
    if state.size:
        state.run_fifo(graph, alpha, r_max, recorder=recorder)
        state.resync()
    spent = state.edge_push_count - before
    logger.debug("refine s=%d r_max=%.3e: %d edge pushes", s, r_max, spent)
    return spent


def _copy(state: PushState) -> PushState:
    return PushState(
        source=state.source,
        reserve=state.reserve.copy(),
        residue=state.residue.copy(),
        r_sum=state.r_sum,
        in_queue=state.in_queue.copy(),
        queue=state.queue.copy(),
        head=state.head,
        size=state.size,
        edge_push_count=state.edge_push_count,
    )


__all__ = ["fifo_forward_push", "forward_push_arbitrary", "refine"]
