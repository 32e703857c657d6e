"""Benchmark harness: sweeps, result rows and the optional SQL store."""

from .records import QueryRecord, SweepRow
from .sweep import SweepResult, median_source, run_sweep, sample_sources, write_sweep

__all__ = [
    "QueryRecord",
    "SweepResult",
    "SweepRow",
    "median_source",
    "run_sweep",
    "sample_sources",
    "write_sweep",
]
