r"""PowerPush.

Phase one is FIFO Forward Push with ``r_max = λ/m`` while the queue stays
within ``scan_threshold`` entries.  Once the active set grows past that (or
the queue drains with ``r_sum`` still above ``λ``) the queue is dropped and
phase two sweeps the nodes in id order, in ``epoch_num`` epochs whose
thresholds ``λ^(i/epoch_num)/m`` tighten geometrically; each epoch repeats
full passes until ``r_sum ≤ m·r_max'``.

``m`` here is :attr:`Graph.effective_edges`, which equals the edge count on
graphs without dead-ends.  ``r_sum`` is re-summed exactly after every pass.
"""

from __future__ import annotations

import logging
import time
from typing import Optional

from core.graph import Graph
from core.schemas import QueryConfig

from . import kernels
from .state import CheckpointRecorder, PPRVector, PushState, check_alpha

logger = logging.getLogger(__name__)


def power_push(
    graph: Graph,
    s: int,
    alpha: float,
    lam: float,
    cfg: Optional[QueryConfig] = None,
    recorder: Optional[CheckpointRecorder] = None,
    state: Optional[PushState] = None,
) -> PPRVector:
    """Reduce ``r_sum`` to at most ``lam``.

    ``cfg`` supplies ``epoch_num`` and ``scan_threshold`` (resolved against
    ``graph`` when unset).  A caller may pass a fresh ``state`` to keep
    working on it afterwards; it is updated in place.
    """

    check_alpha(alpha)
    if not 0.0 < lam <= 1.0:
        raise ValueError("lambda must lie in (0, 1]")
    cfg = (cfg or QueryConfig(alpha=alpha)).resolve(graph)
    started = time.perf_counter_ns()
    if recorder is not None:
        recorder.start()
    if state is None:
        state = PushState.initial(graph, s)
    edges = graph.effective_edges

    r_max = lam / edges
    state.enqueue(s)
    status = state.run_fifo(
        graph,
        alpha,
        r_max,
        stop_r_sum=lam,
        size_limit=cfg.scan_threshold,
        recorder=recorder,
    )
    state.resync()
    phase_one_pushes = state.edge_push_count
    logger.debug(
        "powerpush s=%d phase one: status=%d queue=%d r_sum=%.3e",
        s, status, state.size, state.r_sum,
    )

    epochs = 0
    if state.r_sum > lam:
        state.clear_queue()
        for i in range(1, cfg.epoch_num + 1):
            epoch_r_max = lam ** (i / cfg.epoch_num) / edges
            epochs += 1
            while state.r_sum > edges * epoch_r_max:
                pushed = state.run_scan(graph, alpha, epoch_r_max, recorder=recorder)
                state.resync()
                if pushed == 0:
                    break
            logger.debug("powerpush s=%d epoch %d: r_sum=%.3e", s, i, state.r_sum)
        if state.r_sum > lam:
            logger.warning("powerpush s=%d stopped at r_sum=%.3e above lambda=%.3e", s, state.r_sum, lam)

    return PPRVector.from_state(
        state,
        alpha,
        "powerpush",
        wall_time_ns=time.perf_counter_ns() - started,
        checkpoints=recorder.checkpoints if recorder is not None else [],
        details={
            "lambda": lam,
            "phase_one_pushes": phase_one_pushes,
            "epochs": epochs,
            "switched_to_scan": status == kernels.QUEUE_TOO_LARGE,
        },
    )


__all__ = ["power_push"]
