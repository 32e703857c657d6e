"""Graph storage and the dead-end convention."""

from .csr import Graph, from_edges

__all__ = ["Graph", "from_edges"]
