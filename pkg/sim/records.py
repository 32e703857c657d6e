"""Row types produced by queries and sweeps, and their CSV writers."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, List, Sequence

import numpy as np
import pandas as pd

from core.engines.state import Checkpoint, PPRVector

FLOAT_FORMAT = "%.17g"


@dataclass(frozen=True)
class SweepRow:
    graph: str
    source: int
    algo: str
    param: float
    seed: int
    wall_time_ns: int
    edge_pushes: int
    walks: int
    achieved_r_sum: float
    l1_error: float
    max_rel_error: float
    violated_nodes: int
    config_hash: str


@dataclass(frozen=True)
class QueryRecord:
    """Instrumentation of one query, written by ``query --stats``."""

    source: int
    algorithm: str
    param: float
    edge_pushes: int
    walks: int
    wall_time_ns: int
    achieved_r_sum: float

    @classmethod
    def from_result(cls, result: PPRVector, param: float) -> "QueryRecord":
        return cls(
            source=result.source,
            algorithm=result.algorithm,
            param=param,
            edge_pushes=result.pushes,
            walks=result.walks,
            wall_time_ns=result.wall_time_ns,
            achieved_r_sum=result.achieved_r_sum,
        )


def _frame(rows: Sequence[object], columns: List[str]) -> pd.DataFrame:
    return pd.DataFrame([asdict(r) for r in rows], columns=columns)


def write_rows(path: Path | str, rows: Iterable[SweepRow]) -> Path:
    columns = [f.name for f in fields(SweepRow)]
    _frame(list(rows), columns).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return Path(path)


def write_query_records(path: Path | str, records: Iterable[QueryRecord]) -> Path:
    columns = [f.name for f in fields(QueryRecord)]
    _frame(list(records), columns).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return Path(path)


def write_checkpoints(path: Path | str, checkpoints: Iterable[Checkpoint]) -> Path:
    columns = ["pushes", "r_sum", "time_ns"]
    _frame(list(checkpoints), columns).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return Path(path)


def write_ppr(path: Path | str, estimates: np.ndarray) -> Path:
    """``node,ppr`` CSV with one row per node."""

    frame = pd.DataFrame({"node": np.arange(estimates.shape[0]), "ppr": estimates})
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return Path(path)


def read_ppr(path: Path | str) -> np.ndarray:
    frame = pd.read_csv(path, dtype={"node": np.int64, "ppr": np.float64})
    return frame.sort_values("node")["ppr"].to_numpy()


__all__ = [
    "FLOAT_FORMAT",
    "QueryRecord",
    "SweepRow",
    "read_ppr",
    "write_checkpoints",
    "write_ppr",
    "write_query_records",
    "write_rows",
]
