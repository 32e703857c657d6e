"""Compiled push loops.

Both kernels work in place on the arrays of a :class:`~core.engines.state.PushState`
and take the scalar parts of the state as arguments, returning their new
values.  Each stops early once the edge-push counter reaches ``push_limit``
(``-1`` disables it) so the caller can take a checkpoint and resume.

Dead-ends push their whole share to ``s`` with effective degree one.
"""

from __future__ import annotations

import numpy as np
from numba import njit

QUEUE_EMPTY = 0
R_SUM_REACHED = 1
PUSH_LIMIT = 2
QUEUE_TOO_LARGE = 3


@njit(cache=True, nogil=True)
def _effective_degree(offsets, v):
    d = offsets[v + 1] - offsets[v]
    if d == 0:
        return 1
    return d


@njit(cache=True, nogil=True)
def fifo_kernel(
    offsets,
    neighbors,
    s,
    alpha,
    r_max,
    reserve,
    residue,
    queue,
    in_queue,
    head,
    size,
    r_sum,
    pushes,
    stop_r_sum,
    push_limit,
    size_limit,
):
    """Pop-and-push until the queue empties or a stop condition holds.

    Returns ``(status, head, size, r_sum, pushes)``.
    """

    capacity = queue.shape[0]
    while size > 0:
        if r_sum <= stop_r_sum:
            return R_SUM_REACHED, head, size, r_sum, pushes
        if size_limit >= 0 and size > size_limit:
            return QUEUE_TOO_LARGE, head, size, r_sum, pushes
        if push_limit >= 0 and pushes >= push_limit:
            return PUSH_LIMIT, head, size, r_sum, pushes
        v = queue[head]
        head = (head + 1) % capacity
        size -= 1
        in_queue[v] = False
        r = residue[v]
        if r <= 0.0:
            continue
        start = offsets[v]
        end = offsets[v + 1]
        residue[v] = 0.0
        reserve[v] += alpha * r
        r_sum -= alpha * r
        if end == start:
            residue[s] += (1.0 - alpha) * r
            pushes += 1
            if not in_queue[s] and residue[s] > _effective_degree(offsets, s) * r_max:
                queue[(head + size) % capacity] = s
                size += 1
                in_queue[s] = True
            continue
        share = (1.0 - alpha) * r / (end - start)
        for k in range(start, end):
            u = np.int64(neighbors[k])
            residue[u] += share
            if not in_queue[u] and residue[u] > _effective_degree(offsets, u) * r_max:
                queue[(head + size) % capacity] = u
                size += 1
                in_queue[u] = True
        pushes += end - start
    return QUEUE_EMPTY, head, size, r_sum, pushes


@njit(cache=True, nogil=True)
def scan_kernel(
    offsets,
    neighbors,
    s,
    alpha,
    r_max,
    reserve,
    residue,
    cursor,
    r_sum,
    pushes,
    push_limit,
):
    """One id-ordered pass from ``cursor``, pushing every active node.

    Pushes are asynchronous: a node reached later in the pass sees mass sent
    to it earlier in the same pass.  Returns ``(cursor, r_sum, pushes,
    pushed)`` where ``cursor == n`` means the pass finished and ``pushed``
    counts node pushes made in this call.
    """

    n = residue.shape[0]
    pushed = 0
    v = cursor
    while v < n:
        if push_limit >= 0 and pushes >= push_limit:
            return v, r_sum, pushes, pushed
        start = offsets[v]
        end = offsets[v + 1]
        r = residue[v]
        if end == start:
            if r > r_max:
                residue[v] = 0.0
                reserve[v] += alpha * r
                r_sum -= alpha * r
                residue[s] += (1.0 - alpha) * r
                pushes += 1
                pushed += 1
        elif r > (end - start) * r_max:
            residue[v] = 0.0
            reserve[v] += alpha * r
            r_sum -= alpha * r
            share = (1.0 - alpha) * r / (end - start)
            for k in range(start, end):
                residue[np.int64(neighbors[k])] += share
            pushes += end - start
            pushed += 1
        v += 1
    return v, r_sum, pushes, pushed


__all__ = [
    "PUSH_LIMIT",
    "QUEUE_EMPTY",
    "QUEUE_TOO_LARGE",
    "R_SUM_REACHED",
    "fifo_kernel",
    "scan_kernel",
]
