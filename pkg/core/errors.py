"""Exception types shared across the package.

Everything derives from a built-in so callers that only know about
``ValueError`` keep working.
"""

from __future__ import annotations


class GraphFormatError(ValueError):
    """Edge list, cache file or CSR arrays that cannot form a valid graph."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class IndexFormatError(ValueError):
    """Walk-index file that is truncated, foreign or built for another graph."""


class IndexMismatchError(ValueError):
    """Walk index built for a different stop probability than the query."""


class OracleGuardError(ValueError):
    """Dense oracle requested on a graph larger than its guard."""


class ConsistencyError(AssertionError):
    """An internal numerical invariant no longer holds."""


__all__ = [
    "GraphFormatError",
    "IndexFormatError",
    "IndexMismatchError",
    "OracleGuardError",
    "ConsistencyError",
]
