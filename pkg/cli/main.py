"""Command-line front end.

Exit codes: ``0`` on success, ``1`` for usage errors, ``2`` for data errors
(unparsable or inconsistent inputs).
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
import yaml
from pydantic import ValidationError

from core import registry
from core.approx.index import WalkIndex, build_index, load_index, save_index
from core.engines.state import CheckpointRecorder
from core.graph import Graph
from core.schemas import SweepPlan
from core.scoring import ground_truth
from pipeline.graph.cache import save_graph
from pipeline.ingest import load_graph
from sim.records import FLOAT_FORMAT, QueryRecord, write_checkpoints, write_ppr, write_query_records
from sim.store import ResultStore
from sim.sweep import run_sweep, sample_sources, write_sweep

from .schemas import Command

logger = logging.getLogger(__name__)

USAGE_ERROR = 1
DATA_ERROR = 2


class UsageError(Exception):
    """Bad flags or flag combinations."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--graph", required=True, type=Path, help="edge list or graph cache")
    common.add_argument("--undirected", action="store_true", default=None, help="add both directions of every edge")
    common.add_argument("--alpha", type=float, help="stop probability (default 0.2)")
    common.add_argument("--seed", type=int, help="seed for every random choice (default 0)")
    common.add_argument("--out", type=Path, help="output file (directory for bench)")
    common.add_argument("-v", "--verbose", action="store_true", default=None)

    queries = _Parser(add_help=False)
    queries.add_argument("--algo", help="powitr, fwdpush-fifo, simfwdpush, powerpush or speedppr")
    queries.add_argument("--lambda", dest="lambda", type=float, help="l1 threshold (default min(1/m, 1e-8))")
    queries.add_argument("--epsilon", type=float, help="relative error for speedppr")
    queries.add_argument("--mu", type=float, help="PPR threshold for speedppr (default 1/n)")
    queries.add_argument("--index", type=Path, help="walk index for speedppr")
    queries.add_argument("--epochs", type=int, help="PowerPush epochs (default 8)")
    queries.add_argument("--scan-threshold", type=int, help="queue size that switches to scans (default n/4)")
    queries.add_argument("--checkpoint-every", type=int, help="edge pushes between checkpoints (default 4m)")

    sources = _Parser(add_help=False)
    sources.add_argument("--source", type=int, help="query source node")
    sources.add_argument("--random-sources", type=int, help="draw K sources uniformly at random")

    parser = _Parser(prog="ssppr", description="Single-source personalized PageRank.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("clean", parents=[common], help="clean an edge list into a graph cache")
    query = sub.add_parser("query", parents=[common, queries, sources], help="run one SSPPR query per source")
    query.add_argument("--stats", type=Path, help="write per-query instrumentation CSV")
    sub.add_parser("build-index", parents=[common], help="precompute the walk index")
    sub.add_parser("groundtruth", parents=[common, sources], help="high-precision reference vectors")
    bench = sub.add_parser("bench", parents=[common, queries, sources], help="run a benchmark sweep")
    bench.add_argument("--plan", type=Path, help="YAML sweep plan")
    bench.add_argument("--workers", type=int, help="concurrent cells")
    bench.add_argument("--db", help="SQLAlchemy DSN to append sweep rows to")
    bench.add_argument("--name", help="graph name used in output files")
    return parser


def _sources(cmd: Command, graph: Graph) -> List[int]:
    if cmd.source is not None:
        if cmd.source >= graph.n:
            raise ValueError(f"source {cmd.source} outside [0, {graph.n})")
        return [cmd.source]
    return sample_sources(graph.n, cmd.random_sources, cmd.seed)


def _output_path(out: Path, source: int, many: bool) -> Path:
    return out.with_name(f"{out.stem}_s{source}{out.suffix}") if many else out


def _emit(cmd: Command, source: int, many: bool, estimates: np.ndarray) -> None:
    if cmd.out is None:
        frame = pd.DataFrame({"node": np.arange(estimates.shape[0]), "ppr": estimates})
        frame.to_csv(sys.stdout, index=False, float_format=FLOAT_FORMAT)
        return
    path = write_ppr(_output_path(cmd.out, source, many), estimates)
    logger.info("wrote %s", path)


def _load_index(cmd: Command, graph: Graph) -> Optional[WalkIndex]:
    if cmd.index is None:
        return None
    if cmd.algo != "speedppr":
        logger.warning("--index is only used by speedppr; ignoring it for %s", cmd.algo)
        return None
    return load_index(cmd.index, graph)


def _clean(cmd: Command) -> int:
    graph = load_graph(cmd.graph, cmd.undirected)
    written = save_graph(graph, cmd.out)
    if graph.original_ids is not None:
        ids = cmd.out.with_name(f"{cmd.out.name}.ids.csv")
        pd.DataFrame({"node": np.arange(graph.n), "original_id": graph.original_ids}).to_csv(ids, index=False)
    print(f"n={graph.n} m={graph.m} dead_ends={graph.dead_ends.shape[0]} bytes={written}")
    return 0


def _query(cmd: Command) -> int:
    graph = load_graph(cmd.graph, cmd.undirected)
    cfg = cmd.query_config().resolve(graph)
    index = _load_index(cmd, graph)
    algo = "speedppr-index" if index is not None else cmd.algo
    param = cfg.epsilon if algo in registry.APPROXIMATE else cfg.lambda_
    sources = _sources(cmd, graph)
    many = len(sources) > 1
    records = []
    for s in sources:
        recorder = CheckpointRecorder(cfg.checkpoint_every) if algo in registry.HIGH_PRECISION else None
        result = registry.run_query(algo, graph, s, cfg, index=index, recorder=recorder)
        _emit(cmd, s, many, result.estimates)
        records.append(QueryRecord.from_result(result, param))
        if cmd.stats is not None and recorder is not None:
            series = cmd.stats.with_name(f"{cmd.stats.stem}_checkpoints{cmd.stats.suffix}")
            write_checkpoints(_output_path(series, s, many), result.checkpoints)
    if cmd.stats is not None:
        write_query_records(cmd.stats, records)
    return 0


def _build_index(cmd: Command) -> int:
    graph = load_graph(cmd.graph, cmd.undirected)
    started = time.perf_counter()
    index = build_index(graph, cmd.alpha, cmd.seed)
    written = save_index(index, cmd.out)
    elapsed = time.perf_counter() - started
    if written != index.nbytes:
        raise OSError(f"wrote {written} bytes to {cmd.out}, expected {index.nbytes}")
    stats = {**index.stats(), "seconds": f"{elapsed:.3f}"}
    print(" ".join(f"{key}={value}" for key, value in stats.items()))
    return 0


def _groundtruth(cmd: Command) -> int:
    graph = load_graph(cmd.graph, cmd.undirected)
    sources = _sources(cmd, graph)
    for s in sources:
        _emit(cmd, s, len(sources) > 1, ground_truth(graph, s, cmd.alpha).estimates)
    return 0


def _plan(cmd: Command, graph: Graph) -> SweepPlan:
    if cmd.plan is not None:
        plan = SweepPlan.from_yaml(cmd.plan)
    else:
        cfg = cmd.query_config().resolve(graph)
        plan = SweepPlan(
            algorithms=[cmd.registry_algo],
            lambdas=[cfg.lambda_],
            epsilons=[cmd.epsilon] if cmd.epsilon is not None else [],
            seeds=[cmd.seed],
            alpha=cmd.alpha,
            mu=cmd.mu,
            epoch_num=cmd.epochs,
            scan_threshold=cmd.scan_threshold,
            checkpoint_every=cmd.checkpoint_every,
        )
    if cmd.workers is not None:
        plan = plan.model_copy(update={"workers": cmd.workers})
    return plan


def _bench(cmd: Command) -> int:
    graph = load_graph(cmd.graph, cmd.undirected)
    plan = _plan(cmd, graph)
    index = load_index(cmd.index, graph) if cmd.index is not None else None
    name = cmd.name or cmd.graph.stem
    result = run_sweep(graph, _sources(cmd, graph), plan, name, index=index)
    for path in write_sweep(result, cmd.out):
        logger.info("wrote %s", path)
    if cmd.db is not None:
        ResultStore(cmd.db).append(result.rows)
    return 0


_HANDLERS: Dict[str, Callable[[Command], int]] = {
    "clean": _clean,
    "query": _query,
    "build-index": _build_index,
    "groundtruth": _groundtruth,
    "bench": _bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        cmd = Command.from_namespace(parser.parse_args(argv))
    except (UsageError, ValidationError) as exc:
        print(f"ssppr: error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    logging.basicConfig(
        level=logging.DEBUG if cmd.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return _HANDLERS[cmd.subcommand](cmd)
    except (ValueError, OSError, yaml.YAMLError) as exc:
        logger.error("%s failed: %s", cmd.subcommand, exc)
        print(f"ssppr: error: {exc}", file=sys.stderr)
        return DATA_ERROR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover - manual invocation
    run()
