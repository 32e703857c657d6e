"""Validated form of one command-line invocation."""

from __future__ import annotations

from argparse import Namespace
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.config import DEFAULT_ALPHA, DEFAULT_EPOCH_NUM
from core.schemas import QueryConfig

Subcommand = Literal["clean", "query", "build-index", "groundtruth", "bench"]

CLI_ALGORITHMS = ("powitr", "fwdpush-fifo", "simfwdpush", "powerpush", "speedppr")


class Command(BaseModel):
    model_config = ConfigDict(populate_by_name=True, frozen=True)

    subcommand: Subcommand
    graph: Path
    undirected: bool = False
    alpha: float = DEFAULT_ALPHA
    algo: Optional[str] = None
    lambda_: Optional[float] = Field(default=None, alias="lambda")
    epsilon: Optional[float] = None
    mu: Optional[float] = None
    source: Optional[int] = Field(default=None, ge=0)
    random_sources: Optional[int] = Field(default=None, gt=0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    index: Optional[Path] = None
    out: Optional[Path] = None
    epochs: int = Field(default=DEFAULT_EPOCH_NUM, gt=0)
    scan_threshold: Optional[int] = Field(default=None, gt=0)
    checkpoint_every: Optional[int] = Field(default=None, gt=0)
    stats: Optional[Path] = None
    plan: Optional[Path] = None
    workers: Optional[int] = Field(default=None, gt=0)
    db: Optional[str] = None
    name: Optional[str] = None
    verbose: bool = False

    @model_validator(mode="after")
    def _check(self) -> "Command":
        if self.algo is not None and self.algo not in CLI_ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algo!r}; choose from {', '.join(CLI_ALGORITHMS)}")
        if self.subcommand == "query" and self.algo is None:
            raise ValueError("query needs --algo")
        if self.algo == "speedppr" and self.epsilon is None:
            raise ValueError("speedppr needs --epsilon")
        if self.subcommand in ("query", "groundtruth", "bench"):
            if (self.source is None) == (self.random_sources is None):
                raise ValueError("give exactly one of --source and --random-sources")
        if self.subcommand in ("query", "groundtruth") and (self.random_sources or 1) > 1 and self.out is None:
            raise ValueError("several sources need --out")
        if self.subcommand in ("clean", "build-index") and self.out is None:
            raise ValueError(f"{self.subcommand} needs --out")
        self.query_config()
        if self.subcommand == "bench":
            if self.plan is None and self.algo is None:
                raise ValueError("bench needs --plan or --algo")
            if self.out is None:
                raise ValueError("bench needs --out (a directory)")
        return self

    @classmethod
    def from_namespace(cls, ns: Namespace) -> "Command":
        data = {k: v for k, v in vars(ns).items() if v is not None}
        return cls(**data)

    @property
    def registry_algo(self) -> str:
        """Registry name of the chosen engine; ``speedppr`` with an index uses it."""

        if self.algo == "speedppr" and self.index is not None:
            return "speedppr-index"
        return self.algo

    def query_config(self) -> QueryConfig:
        return QueryConfig(
            alpha=self.alpha,
            lambda_=self.lambda_,
            epsilon=self.epsilon,
            mu=self.mu,
            seed=self.seed,
            epoch_num=self.epochs,
            scan_threshold=self.scan_threshold,
            checkpoint_every=self.checkpoint_every,
        )


__all__ = ["CLI_ALGORITHMS", "Command"]
