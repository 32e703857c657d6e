r"""Push state, results and instrumentation shared by all engines.

A query starts with all mass as residue on the source,
``residue[s] = 1``.  A push on ``v`` moves ``α·r(s,v)`` into the reserve and
spreads the remaining ``(1−α)·r(s,v)`` evenly over the effective
out-neighbours of ``v``, so ``Σ reserve + Σ residue = 1`` holds after every
push and ``r_sum`` drops by exactly ``α·r(s,v)``.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from core.config import R_SUM_DRIFT_TOLERANCE
from core.errors import ConsistencyError
from core.graph import Graph

from . import kernels

logger = logging.getLogger(__name__)


def check_alpha(alpha: float) -> None:
    """Reject stop probabilities for which pushing never absorbs mass."""

    if not 0.0 < alpha < 1.0:
        raise ValueError(f"push engines need alpha in (0, 1), got {alpha}")


@dataclass(frozen=True)
class Checkpoint:
    pushes: int
    r_sum: float
    time_ns: int


class CheckpointRecorder:
    """Sample ``r_sum`` each time the push counter crosses a multiple of ``every``.

    ``observer`` (if given) is called with the live :class:`PushState` at every
    sample; it must not modify the state.
    """

    def __init__(self, every: int, observer: Optional[Callable[["PushState"], None]] = None) -> None:
        if every <= 0:
            raise ValueError("checkpoint cadence must be positive")
        self.every = int(every)
        self.observer = observer
        self.checkpoints: List[Checkpoint] = []
        self.next_due = self.every
        self._start = time.perf_counter_ns()

    def start(self) -> None:
        self._start = time.perf_counter_ns()

    def due(self, pushes: int) -> bool:
        return pushes >= self.next_due

    def record(self, state: "PushState") -> None:
        self.checkpoints.append(
            Checkpoint(state.edge_push_count, state.r_sum, time.perf_counter_ns() - self._start)
        )
        if self.observer is not None:
            self.observer(state)
        self.next_due = (state.edge_push_count // self.every + 1) * self.every

    def maybe_record(self, state: "PushState") -> None:
        if self.due(state.edge_push_count):
            self.record(state)


@dataclass
class PushState:
    """Reserve and residue vectors of one query plus the FIFO queue.

    The queue is a ring buffer of capacity ``n``; ``in_queue`` guarantees a
    node is stored at most once.
    """

    source: int
    reserve: np.ndarray
    residue: np.ndarray
    r_sum: float
    in_queue: np.ndarray
    queue: np.ndarray
    head: int = 0
    size: int = 0
    edge_push_count: int = 0

    @classmethod
    def initial(cls, graph: Graph, s: int) -> "PushState":
        if not 0 <= s < graph.n:
            raise ValueError(f"source {s} outside [0, {graph.n})")
        residue = np.zeros(graph.n, dtype=np.float64)
        residue[s] = 1.0
        return cls(
            source=s,
            reserve=np.zeros(graph.n, dtype=np.float64),
            residue=residue,
            r_sum=1.0,
            in_queue=np.zeros(graph.n, dtype=np.bool_),
            queue=np.zeros(graph.n, dtype=np.int64),
        )

    # ------------------------------------------------------------------
    # queue helpers

    def queued(self) -> List[int]:
        """Queue contents, front first."""

        n = self.queue.shape[0]
        return [int(self.queue[(self.head + i) % n]) for i in range(self.size)]

    def enqueue(self, v: int) -> None:
        if self.in_queue[v]:
            return
        n = self.queue.shape[0]
        self.queue[(self.head + self.size) % n] = v
        self.size += 1
        self.in_queue[v] = True

    def clear_queue(self) -> None:
        self.in_queue[:] = False
        self.head = 0
        self.size = 0

    def enqueue_active(self, graph: Graph, r_max: float) -> None:
        """Append every node active w.r.t. ``r_max`` in id order."""

        for v in np.flatnonzero(self.residue > graph.effective_degree * r_max):
            self.enqueue(int(v))

    # ------------------------------------------------------------------
    # bookkeeping

    def mass(self) -> float:
        return float(self.reserve.sum() + self.residue.sum())

    def resync(self) -> float:
        """Replace the running ``r_sum`` by an exact sum and return the drift."""

        exact = float(self.residue.sum())
        drift = abs(exact - self.r_sum)
        if drift > R_SUM_DRIFT_TOLERANCE:
            raise ConsistencyError(f"r_sum drifted by {drift:.3e}")
        self.r_sum = exact
        return drift

    def is_active(self, graph: Graph, v: int, r_max: float) -> bool:
        return bool(self.residue[v] > graph.effective_degree[v] * r_max)

    def any_active(self, graph: Graph, r_max: float) -> bool:
        return bool(np.any(self.residue > graph.effective_degree * r_max))

    # ------------------------------------------------------------------
    # kernel drivers

    def run_fifo(
        self,
        graph: Graph,
        alpha: float,
        r_max: float,
        *,
        stop_r_sum: float = -1.0,
        size_limit: int = -1,
        recorder: Optional[CheckpointRecorder] = None,
    ) -> int:
        """Drive :func:`~core.engines.kernels.fifo_kernel` to a final status."""

        while True:
            limit = recorder.next_due if recorder is not None else -1
            status, self.head, self.size, self.r_sum, self.edge_push_count = kernels.fifo_kernel(
                graph.out_offsets,
                graph.out_neighbors,
                self.source,
                alpha,
                r_max,
                self.reserve,
                self.residue,
                self.queue,
                self.in_queue,
                self.head,
                self.size,
                self.r_sum,
                self.edge_push_count,
                stop_r_sum,
                limit,
                size_limit,
            )
            if status != kernels.PUSH_LIMIT:
                return int(status)
            recorder.record(self)

    def run_scan(
        self,
        graph: Graph,
        alpha: float,
        r_max: float,
        recorder: Optional[CheckpointRecorder] = None,
    ) -> int:
        """One full id-ordered pass; returns the number of node pushes."""

        cursor, total = 0, 0
        while cursor < graph.n:
            limit = recorder.next_due if recorder is not None else -1
            cursor, self.r_sum, self.edge_push_count, pushed = kernels.scan_kernel(
                graph.out_offsets,
                graph.out_neighbors,
                self.source,
                alpha,
                r_max,
                self.reserve,
                self.residue,
                cursor,
                self.r_sum,
                self.edge_push_count,
                limit,
            )
            total += int(pushed)
            if cursor < graph.n:
                recorder.record(self)
        return total


def push_once(state: PushState, v: int, graph: Graph, s: int, alpha: float) -> None:
    """Push the residue of ``v`` once.

    Zero residue is a no-op.  The self-contribution of a self-loop, or of a
    dead-end that is the source, is added after the residue is zeroed.
    """

    r = float(state.residue[v])
    if r <= 0.0:
        return
    neighbors, degree = graph.effective_out(v, s)
    state.residue[v] = 0.0
    state.reserve[v] += alpha * r
    np.add.at(state.residue, neighbors.astype(np.int64), (1.0 - alpha) * r / degree)
    state.r_sum -= alpha * r
    state.edge_push_count += degree


@dataclass
class PPRVector:
    """Result of a single-source query.

    ``residues`` holds the final residue vector for the high-precision
    engines; approximate engines redistribute it and leave zeros.
    """

    estimates: np.ndarray
    residues: np.ndarray
    source: int
    alpha: float
    achieved_r_sum: float
    pushes: int
    algorithm: str = ""
    walks: int = 0
    wall_time_ns: int = 0
    checkpoints: List[Checkpoint] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_state(cls, state: PushState, alpha: float, algorithm: str, **kwargs: Any) -> "PPRVector":
        return cls(
            estimates=state.reserve,
            residues=state.residue,
            source=state.source,
            alpha=alpha,
            achieved_r_sum=float(state.residue.sum()),
            pushes=state.edge_push_count,
            algorithm=algorithm,
            **kwargs,
        )

    @property
    def n(self) -> int:
        return int(self.estimates.shape[0])


__all__ = [
    "Checkpoint",
    "CheckpointRecorder",
    "PPRVector",
    "PushState",
    "check_alpha",
    "push_once",
]
