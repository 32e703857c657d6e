"""Core package utilities.

The package exposes a small subset of the engine API at the top level for
convenience during experiments and in the test-suite.
"""

from .engines.state import PPRVector
from .graph import Graph
from .registry import run_query
from .schemas import QueryConfig

__all__ = ["Graph", "PPRVector", "QueryConfig", "run_query"]
