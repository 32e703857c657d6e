"""Ground-truth PPR vectors for benchmarking.

Truth is PowerPush run down to ``λ = 1e-17``, about the resolution of a
double.  On graphs small enough for the dense oracle the result is also
checked against it.
"""

from __future__ import annotations

import logging

from core.config import CROSS_CHECK_TOLERANCE, GROUND_TRUTH_LAMBDA, ORACLE_MAX_NODES
from core.engines.power_push import power_push
from core.engines.state import PPRVector
from core.errors import ConsistencyError
from core.graph import Graph
from core.oracle import exact_ppr

from .errors import l1_error

logger = logging.getLogger(__name__)


def ground_truth(graph: Graph, s: int, alpha: float, cross_check: bool = True) -> PPRVector:
    truth = power_push(graph, s, alpha, GROUND_TRUTH_LAMBDA)
    truth.algorithm = "groundtruth"
    if cross_check and graph.n <= ORACLE_MAX_NODES:
        gap = l1_error(truth, exact_ppr(graph, s, alpha))
        truth.details["oracle_l1"] = gap
        if gap > CROSS_CHECK_TOLERANCE:
            raise ConsistencyError(f"ground truth for s={s} is {gap:.3e} away from the dense oracle")
        logger.debug("ground truth s=%d agrees with the oracle (l1=%.3e)", s, gap)
    logger.info("ground truth s=%d: r_sum=%.3e after %d edge pushes", s, truth.achieved_r_sum, truth.pushes)
    return truth


__all__ = ["ground_truth"]
