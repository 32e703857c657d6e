"""Optional SQL store for sweep summary rows."""

from __future__ import annotations

import logging
from dataclasses import asdict
from typing import Iterable, List

from sqlalchemy import BigInteger, Column, Float, Integer, MetaData, String, Table, create_engine, select
from sqlalchemy.engine import Engine
from sqlalchemy.pool import StaticPool

from .records import SweepRow

logger = logging.getLogger(__name__)


def _get_engine(dsn: str) -> Engine:
    if dsn.startswith("sqlite"):
        return create_engine(
            dsn,
            future=True,
            connect_args={"check_same_thread": False},
            poolclass=StaticPool,
        )
    return create_engine(dsn, future=True)


def _sweep_table(metadata: MetaData) -> Table:
    return Table(
        "sweep_row",
        metadata,
        Column("id", Integer, primary_key=True, autoincrement=True),
        Column("graph", String, nullable=False),
        Column("source", BigInteger, nullable=False),
        Column("algo", String, nullable=False),
        Column("param", Float, nullable=False),
        Column("seed", BigInteger, nullable=False),
        Column("wall_time_ns", BigInteger, nullable=False),
        Column("edge_pushes", BigInteger, nullable=False),
        Column("walks", BigInteger, nullable=False),
        Column("achieved_r_sum", Float, nullable=False),
        Column("l1_error", Float, nullable=False),
        Column("max_rel_error", Float, nullable=False),
        Column("violated_nodes", Integer, nullable=False),
        Column("config_hash", String, nullable=False),
    )


class ResultStore:
    """Appends sweep rows to the ``sweep_row`` table at ``dsn``."""

    def __init__(self, dsn: str) -> None:
        self.engine = _get_engine(dsn)
        self.metadata = MetaData()
        self.table = _sweep_table(self.metadata)
        self.metadata.create_all(self.engine)

    def append(self, rows: Iterable[SweepRow]) -> int:
        payload = [asdict(row) for row in rows]
        if not payload:
            return 0
        with self.engine.begin() as conn:
            conn.execute(self.table.insert(), payload)
        logger.info("stored %d sweep rows", len(payload))
        return len(payload)

    def rows(self, graph: str | None = None) -> List[SweepRow]:
        stmt = select(self.table).order_by(self.table.c.id)
        if graph is not None:
            stmt = stmt.where(self.table.c.graph == graph)
        with self.engine.connect() as conn:
            records = conn.execute(stmt).mappings().all()
        return [SweepRow(**{k: v for k, v in r.items() if k != "id"}) for r in records]


__all__ = ["ResultStore"]
