r"""SpeedPPR: PowerPush, refinement, then Monte Carlo on the leftover residues.

With walk budget ``W`` the push phase stops at ``λ = m/W`` and a refinement
pass leaves no node active w.r.t. ``r_max = 1/W``.  Every node still holding
residue then runs ``W_v = ⌈r(s,v)·W⌉ ≤ d_v`` walks, each carrying
``r(s,v)/W_v`` of mass to its terminal.  When ``W ≤ m`` pushing cannot pay
off and the query is answered by ``W`` walks straight from ``s``.
"""

from __future__ import annotations

import logging
import time
from typing import Any, Dict, Optional, Union

import numpy as np

from core.engines.forward_push import refine
from core.engines.power_push import power_push
from core.engines.state import CheckpointRecorder, PPRVector, PushState
from core.errors import ConsistencyError, IndexFormatError, IndexMismatchError
from core.graph import Graph
from core.schemas import QueryConfig

from .budget import compute_walk_budget
from .index import WalkIndex
from .walks import FreshWalks, IndexedWalks, WalkSource

logger = logging.getLogger(__name__)

_DEGREE_SLACK = 1e-9

WalkSupply = Union[np.random.Generator, WalkIndex, WalkSource]


def _walk_source(
    graph: Graph, alpha: float, supply: WalkSupply, rng: Optional[np.random.Generator]
) -> WalkSource:
    if isinstance(supply, np.random.Generator):
        return FreshWalks(graph, alpha, supply)
    if isinstance(supply, WalkIndex):
        if supply.n != graph.n:
            raise IndexFormatError(f"walk index has {supply.n} nodes, graph has {graph.n}")
        return IndexedWalks(supply, FreshWalks(graph, alpha, rng or np.random.default_rng()))
    return supply


def monte_carlo_phase(
    graph: Graph,
    s: int,
    alpha: float,
    state: PushState,
    W: int,
    supply: WalkSupply,
    *,
    rng: Optional[np.random.Generator] = None,
    enforce_degree_bound: bool = True,
) -> PPRVector:
    """Turn the residues of ``state`` into walk-based estimates.

    ``supply`` is a generator for fresh walks, a :class:`WalkIndex` (``rng``
    then drives the top-up walks) or any :class:`WalkSource`.  The state is
    left untouched.
    """

    source = _walk_source(graph, alpha, supply, rng)
    if source.alpha != alpha:
        raise IndexMismatchError(f"walks built for alpha={source.alpha}, query uses alpha={alpha}")
    nodes = np.flatnonzero(state.residue > 0.0)
    residues = state.residue[nodes]
    counts = np.ceil(residues * W).astype(np.int64)
    if enforce_degree_bound and nodes.shape[0]:
        bound = graph.effective_degree[nodes]
        if np.any(residues * W > bound * (1.0 + _DEGREE_SLACK)):
            worst = int(nodes[np.argmax(residues * W / bound)])
            raise ConsistencyError(f"node {worst} needs more walks than its degree; refine first")
        counts = np.minimum(counts, bound)

    terminals, fresh = source.sample(nodes, counts, s)
    weights = np.repeat(residues / counts, counts)
    estimates = state.reserve + np.bincount(terminals, weights=weights, minlength=graph.n)
    logger.debug("monte carlo s=%d: %d walks from %d nodes (%d fresh)", s, terminals.shape[0], nodes.shape[0], fresh)
    return PPRVector(
        estimates=estimates,
        residues=np.zeros(graph.n, dtype=np.float64),
        source=s,
        alpha=alpha,
        achieved_r_sum=0.0,
        pushes=state.edge_push_count,
        walks=int(terminals.shape[0]),
        details={"fresh_walks": fresh, "walk_nodes": int(nodes.shape[0])},
    )


def speedppr_query(
    graph: Graph,
    s: int,
    cfg: QueryConfig,
    index: Optional[WalkIndex] = None,
    recorder: Optional[CheckpointRecorder] = None,
) -> PPRVector:
    """Approximate SSPPR with relative error ``cfg.epsilon`` above ``cfg.mu``.

    Walk randomness comes from ``default_rng([cfg.seed, s])``, so a query is
    reproducible per (seed, source).
    """

    if cfg.epsilon is None:
        raise ValueError("speedppr needs epsilon")
    cfg = cfg.resolve(graph)
    if index is not None and index.alpha != cfg.alpha:
        raise IndexMismatchError(f"index built for alpha={index.alpha}, query uses alpha={cfg.alpha}")
    started = time.perf_counter_ns()
    budget = compute_walk_budget(graph.n, cfg.epsilon, cfg.mu)
    W = budget.W
    rng = np.random.default_rng([cfg.seed, s])
    supply: WalkSupply = index if index is not None else rng
    state = PushState.initial(graph, s)

    details: Dict[str, Any] = {"W": W, "epsilon": cfg.epsilon, "mu": cfg.mu, "cfg_hash": cfg.hash()}
    if graph.m / W >= 1.0:
        details["branch"] = "monte-carlo"
        result = monte_carlo_phase(graph, s, cfg.alpha, state, W, supply, rng=rng, enforce_degree_bound=False)
    else:
        lam = graph.m / W
        pushed = power_push(graph, s, cfg.alpha, lam, cfg, recorder=recorder, state=state)
        refine_pushes = refine(graph, s, cfg.alpha, 1.0 / W, state, recorder=recorder)
        details["branch"] = "push"
        details["lambda"] = lam
        details["epochs"] = pushed.details["epochs"]
        details["refine_pushes"] = refine_pushes
        details["r_sum_before_walks"] = state.r_sum
        result = monte_carlo_phase(graph, s, cfg.alpha, state, W, supply, rng=rng)

    result.details.update(details)
    result.algorithm = "speedppr" if index is None else "speedppr-index"
    result.wall_time_ns = time.perf_counter_ns() - started
    result.checkpoints = recorder.checkpoints if recorder is not None else []
    logger.info(
        "%s s=%d W=%d: %d edge pushes, %d walks in %.3fs",
        result.algorithm, s, W, result.pushes, result.walks, result.wall_time_ns / 1e9,
    )
    return result


__all__ = ["monte_carlo_phase", "speedppr_query"]
