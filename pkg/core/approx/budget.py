r"""Walk budget for relative-error guarantees.

With

.. math:: W = \left\lceil \frac{2 (2\epsilon/3 + 2) \ln n}{\epsilon^2 \mu} \right\rceil

random walks, a Chernoff bound gives relative error ``ε`` for every node with
``π(s,v) ≥ μ`` with probability at least ``1 − 1/n``.  The logarithm is
natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class WalkBudget:
    walks: int
    n: int
    epsilon: float
    mu: float

    @property
    def W(self) -> int:
        return self.walks


def compute_walk_budget(n: int, epsilon: float, mu: float) -> WalkBudget:
    """Return the walk budget ``W`` for ``n`` nodes, error ``epsilon`` and threshold ``mu``."""

    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not 0.0 < mu <= 1.0:
        raise ValueError("mu must lie in (0, 1]")
    if n < 2:
        raise ValueError("walk budget needs n >= 2")
    raw = 2.0 * (2.0 * epsilon / 3.0 + 2.0) * math.log(n) / (epsilon**2 * mu)
    return WalkBudget(walks=max(1, math.ceil(raw)), n=n, epsilon=epsilon, mu=mu)


__all__ = ["WalkBudget", "compute_walk_budget"]
