"""Schema definitions for queries and sweeps."""

from .domain import QueryConfig, SweepPlan

__all__ = ["QueryConfig", "SweepPlan"]
