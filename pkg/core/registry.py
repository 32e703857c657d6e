"""Registry of SSPPR engines keyed by algorithm name.

Every registered engine has the signature
``engine(graph, source, cfg, *, index=None, recorder=None) -> PPRVector``
with ``cfg`` already resolved against ``graph``.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional

from core.approx.index import WalkIndex
from core.approx.speedppr import speedppr_query
from core.engines.forward_push import fifo_forward_push
from core.engines.power_iteration import power_iteration
from core.engines.power_push import power_push
from core.engines.sim_push import sim_forward_push
from core.engines.state import CheckpointRecorder, PPRVector
from core.graph import Graph
from core.schemas import QueryConfig

Engine = Callable[..., PPRVector]

_REGISTRY: Dict[str, Engine] = {}

HIGH_PRECISION = frozenset({"powitr", "fwdpush-fifo", "simfwdpush", "powerpush"})
APPROXIMATE = frozenset({"speedppr", "speedppr-index"})


def register(name: str, engine: Engine) -> str:
    """Register ``engine`` under ``name`` and return the name."""

    _REGISTRY[name] = engine
    return name


def get(name: str) -> Engine:
    """Retrieve the engine called *name* raising ``KeyError`` if missing."""

    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown algorithm {name!r}; choose from {', '.join(names())}") from None


def names() -> List[str]:
    return sorted(_REGISTRY)


def _powitr(graph: Graph, s: int, cfg: QueryConfig, *, index=None, recorder=None) -> PPRVector:
    return power_iteration(graph, s, cfg.alpha, cfg.lambda_, recorder=recorder)


def _simfwdpush(graph: Graph, s: int, cfg: QueryConfig, *, index=None, recorder=None) -> PPRVector:
    return sim_forward_push(graph, s, cfg.alpha, cfg.lambda_, recorder=recorder)


def _fwdpush_fifo(graph: Graph, s: int, cfg: QueryConfig, *, index=None, recorder=None) -> PPRVector:
    result = fifo_forward_push(graph, s, cfg.alpha, cfg.lambda_ / graph.effective_edges, recorder=recorder)
    result.details["lambda"] = cfg.lambda_
    return result


def _powerpush(graph: Graph, s: int, cfg: QueryConfig, *, index=None, recorder=None) -> PPRVector:
    return power_push(graph, s, cfg.alpha, cfg.lambda_, cfg, recorder=recorder)


def _speedppr(
    graph: Graph,
    s: int,
    cfg: QueryConfig,
    *,
    index: Optional[WalkIndex] = None,
    recorder: Optional[CheckpointRecorder] = None,
) -> PPRVector:
    return speedppr_query(graph, s, cfg, recorder=recorder)


def _speedppr_index(
    graph: Graph,
    s: int,
    cfg: QueryConfig,
    *,
    index: Optional[WalkIndex] = None,
    recorder: Optional[CheckpointRecorder] = None,
) -> PPRVector:
    if index is None:
        raise ValueError("speedppr-index needs a walk index")
    return speedppr_query(graph, s, cfg, index=index, recorder=recorder)


register("powitr", _powitr)
register("simfwdpush", _simfwdpush)
register("fwdpush-fifo", _fwdpush_fifo)
register("powerpush", _powerpush)
register("speedppr", _speedppr)
register("speedppr-index", _speedppr_index)


def run_query(
    name: str,
    graph: Graph,
    s: int,
    cfg: QueryConfig,
    *,
    index: Optional[WalkIndex] = None,
    recorder: Optional[CheckpointRecorder] = None,
) -> PPRVector:
    """Resolve ``cfg`` against ``graph`` and run the engine called ``name``."""

    engine = get(name)
    if cfg.alpha == 0.0:
        raise ValueError("alpha=0 never stops a walk; queries need alpha > 0")
    cfg = cfg.resolve(graph)
    result = engine(graph, s, cfg, index=index, recorder=recorder)
    result.details.setdefault("cfg_hash", cfg.hash())
    return result


__all__ = ["APPROXIMATE", "HIGH_PRECISION", "get", "names", "register", "run_query"]
