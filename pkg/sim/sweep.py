"""Benchmark sweeps over sources, algorithms and parameters.

Each (source, algorithm, parameter, seed) cell is an independent query with
its own state, so cells may run concurrently on a thread pool (the push
kernels release the GIL).  Rows are collected by the calling thread only and
sorted before they are returned.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core import registry
from core.approx.index import WalkIndex, build_index
from core.config import CONFIG_HASH
from core.engines.state import Checkpoint, CheckpointRecorder, PPRVector
from core.graph import Graph
from core.schemas import SweepPlan
from core.scoring import error_report, ground_truth

from .records import SweepRow, write_checkpoints, write_rows

logger = logging.getLogger(__name__)

CellKey = Tuple[str, float, int, int]


@dataclass
class SweepResult:
    graph: str
    rows: List[SweepRow] = field(default_factory=list)
    checkpoints: Dict[CellKey, List[Checkpoint]] = field(default_factory=dict)


@dataclass(frozen=True)
class _Cell:
    source: int
    algo: str
    param: float
    seed: int


def sample_sources(n: int, k: int, seed: int) -> List[int]:
    """``k`` distinct sources drawn uniformly from ``[0, n)``."""

    if not 0 < k <= n:
        raise ValueError(f"cannot draw {k} distinct sources from {n} nodes")
    rng = np.random.default_rng(seed)
    return [int(v) for v in rng.choice(n, size=k, replace=False)]


def _cells(plan: SweepPlan, sources: Sequence[int]) -> List[_Cell]:
    cells = []
    for algo in plan.algorithms:
        registry.get(algo)
        if algo in registry.APPROXIMATE:
            if not plan.epsilons:
                raise ValueError(f"{algo} needs at least one epsilon in the plan")
            grid = [(eps, seed) for eps in plan.epsilons for seed in plan.seeds]
        else:
            if not plan.lambdas:
                raise ValueError(f"{algo} needs at least one lambda in the plan")
            grid = [(lam, plan.seeds[0]) for lam in plan.lambdas]
        cells.extend(_Cell(s, algo, param, seed) for s in sources for param, seed in grid)
    return cells


def _run_cell(
    graph: Graph,
    cell: _Cell,
    plan: SweepPlan,
    index: Optional[WalkIndex],
) -> PPRVector:
    if cell.algo in registry.APPROXIMATE:
        cfg = plan.query_config(epsilon=cell.param, seed=cell.seed)
    else:
        cfg = plan.query_config(lambda_=cell.param, seed=cell.seed)
    cfg = cfg.resolve(graph)
    recorder = CheckpointRecorder(cfg.checkpoint_every) if cell.algo in registry.HIGH_PRECISION else None
    return registry.run_query(cell.algo, graph, cell.source, cfg, index=index, recorder=recorder)


def run_sweep(
    graph: Graph,
    sources: Sequence[int],
    plan: SweepPlan,
    graph_name: str = "graph",
    index: Optional[WalkIndex] = None,
) -> SweepResult:
    """Run every cell of ``plan`` for every source and score it against ground truth.

    ``speedppr-index`` cells use ``index``, building one from the plan's
    first seed when none is given.
    """

    cells = _cells(plan, sources)
    if index is None and "speedppr-index" in plan.algorithms:
        index = build_index(graph, plan.alpha, plan.seeds[0])
    truths = {s: ground_truth(graph, s, plan.alpha) for s in dict.fromkeys(sources)}
    mu = plan.mu if plan.mu is not None else 1.0 / graph.n

    result = SweepResult(graph=graph_name)
    with ThreadPoolExecutor(max_workers=plan.workers) as pool:
        futures = {pool.submit(_run_cell, graph, cell, plan, index): cell for cell in cells}
        for future in as_completed(futures):
            cell = futures[future]
            estimate = future.result()
            epsilon = cell.param if cell.algo in registry.APPROXIMATE else None
            report = error_report(estimate, truths[cell.source], epsilon, mu)
            result.rows.append(
                SweepRow(
                    graph=graph_name,
                    source=cell.source,
                    algo=cell.algo,
                    param=cell.param,
                    seed=cell.seed,
                    wall_time_ns=int(estimate.wall_time_ns),
                    edge_pushes=int(estimate.pushes),
                    walks=int(estimate.walks),
                    achieved_r_sum=float(estimate.achieved_r_sum),
                    l1_error=report.l1_error,
                    max_rel_error=report.max_rel_error_above_mu,
                    violated_nodes=report.violated_nodes,
                    config_hash=CONFIG_HASH,
                )
            )
            if estimate.checkpoints:
                result.checkpoints[(cell.algo, cell.param, cell.seed, cell.source)] = estimate.checkpoints
            logger.debug("cell %s done: %d edge pushes", cell, estimate.pushes)

    result.rows.sort(key=lambda r: (plan.algorithms.index(r.algo), r.param, r.seed, r.source))
    logger.info("sweep %s: %d cells over %d sources", graph_name, len(result.rows), len(set(sources)))
    return result


def median_source(rows: Sequence[SweepRow]) -> int:
    """Source whose wall time is the (lower) median of ``rows``."""

    if not rows:
        raise ValueError("no rows to take a median over")
    ordered = sorted(rows, key=lambda r: (r.wall_time_ns, r.source))
    return ordered[(len(ordered) - 1) // 2].source


def write_sweep(result: SweepResult, out_dir: Path | str) -> List[Path]:
    """Write ``{graph}_sweep.csv`` plus one checkpoint file per high-precision (algo, param).

    The checkpoint file holds the series of the median-time source.
    """

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [write_rows(out_dir / f"{result.graph}_sweep.csv", result.rows)]
    groups: Dict[Tuple[str, float], List[SweepRow]] = {}
    for row in result.rows:
        if row.algo in registry.HIGH_PRECISION:
            groups.setdefault((row.algo, row.param), []).append(row)
    for (algo, param), rows in groups.items():
        reference = median_source(rows)
        seed = rows[0].seed
        series = result.checkpoints.get((algo, param, seed, reference), [])
        path = out_dir / f"{result.graph}_{algo}_{param:g}.csv"
        written.append(write_checkpoints(path, series))
        logger.info("wrote checkpoint series %s (source %d)", path, reference)
    return written


__all__ = ["SweepResult", "median_source", "run_sweep", "sample_sources", "write_sweep"]
