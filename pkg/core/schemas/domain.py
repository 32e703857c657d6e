"""Query and sweep models shared by the engines, the harness and the CLI."""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, List, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.config import (
    CHECKPOINT_FACTOR,
    DEFAULT_ALPHA,
    DEFAULT_EPOCH_NUM,
    SCAN_THRESHOLD_DIVISOR,
    cfg_hash,
    default_lambda,
)

if TYPE_CHECKING:  # pragma: no cover - typing only
    from core.graph import Graph

SEED_LIMIT = 2**64


def _check_alpha(value: float) -> float:
    if not 0.0 <= value < 1.0:
        raise ValueError("alpha must lie in [0, 1)")
    return value


def _check_unit(name: str, value: float) -> float:
    if not 0.0 < value <= 1.0:
        raise ValueError(f"{name} must lie in (0, 1]")
    return value


class QueryConfig(BaseModel):
    """Parameters of one SSPPR query.

    ``lambda_``, ``mu``, ``scan_threshold`` and ``checkpoint_every`` default
    to values that depend on the graph; they stay ``None`` until
    :meth:`resolve` fills them in.
    """

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    alpha: float = DEFAULT_ALPHA
    lambda_: Optional[float] = Field(default=None, alias="lambda")
    epsilon: Optional[float] = None
    mu: Optional[float] = None
    seed: int = 0
    epoch_num: int = Field(default=DEFAULT_EPOCH_NUM, gt=0)
    scan_threshold: Optional[int] = Field(default=None, gt=0)
    checkpoint_every: Optional[int] = Field(default=None, gt=0)

    @field_validator("alpha")
    @classmethod
    def _alpha(cls, value: float) -> float:
        return _check_alpha(value)

    @field_validator("lambda_")
    @classmethod
    def _lambda(cls, value: Optional[float]) -> Optional[float]:
        return None if value is None else _check_unit("lambda", value)

    @field_validator("mu")
    @classmethod
    def _mu(cls, value: Optional[float]) -> Optional[float]:
        return None if value is None else _check_unit("mu", value)

    @field_validator("epsilon")
    @classmethod
    def _epsilon(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and value <= 0:
            raise ValueError("epsilon must be positive")
        return value

    @field_validator("seed")
    @classmethod
    def _seed(cls, value: int) -> int:
        if not 0 <= value < SEED_LIMIT:
            raise ValueError("seed must be an unsigned 64-bit integer")
        return value

    def resolve(self, graph: "Graph") -> "QueryConfig":
        """Return a copy with every graph-dependent default filled in."""

        update = {}
        if self.lambda_ is None:
            update["lambda_"] = default_lambda(graph.m)
        if self.mu is None:
            update["mu"] = 1.0 / graph.n
        if self.scan_threshold is None:
            update["scan_threshold"] = max(1, graph.n // SCAN_THRESHOLD_DIVISOR)
        if self.checkpoint_every is None:
            update["checkpoint_every"] = CHECKPOINT_FACTOR * graph.m
        return self.model_copy(update=update) if update else self

    def hash(self) -> str:
        """Stable digest of the query parameters."""

        return cfg_hash(self.model_dump(by_alias=True))


class SweepPlan(BaseModel):
    """Grid of (algorithm, parameter, seed) cells run for every source."""

    algorithms: List[str] = Field(min_length=1)
    lambdas: List[float] = []
    epsilons: List[float] = []
    seeds: List[int] = [0]
    alpha: float = DEFAULT_ALPHA
    mu: Optional[float] = None
    epoch_num: int = Field(default=DEFAULT_EPOCH_NUM, gt=0)
    scan_threshold: Optional[int] = Field(default=None, gt=0)
    checkpoint_every: Optional[int] = Field(default=None, gt=0)
    workers: int = Field(default=1, gt=0)

    @field_validator("alpha")
    @classmethod
    def _alpha(cls, value: float) -> float:
        return _check_alpha(value)

    @field_validator("lambdas")
    @classmethod
    def _lambdas(cls, values: List[float]) -> List[float]:
        return [_check_unit("lambda", v) for v in values]

    @field_validator("epsilons")
    @classmethod
    def _epsilons(cls, values: List[float]) -> List[float]:
        if any(v <= 0 for v in values):
            raise ValueError("epsilon values must be positive")
        return values

    @field_validator("mu")
    @classmethod
    def _mu(cls, value: Optional[float]) -> Optional[float]:
        return None if value is None else _check_unit("mu", value)

    @classmethod
    def from_yaml(cls, path: Path) -> "SweepPlan":
        """Load a plan from a YAML mapping."""

        data = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError(f"sweep plan {path} is not a mapping")
        return cls(**data)

    def query_config(self, **overrides) -> QueryConfig:
        """Build the :class:`QueryConfig` shared by this plan's cells."""

        fields = {
            "alpha": self.alpha,
            "mu": self.mu,
            "epoch_num": self.epoch_num,
            "scan_threshold": self.scan_threshold,
            "checkpoint_every": self.checkpoint_every,
        }
        fields.update(overrides)
        return QueryConfig(**fields)
