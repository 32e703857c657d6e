"""Graph ingestion entry points.

:func:`load_edge_list` and :func:`undirected_to_directed` parse a SNAP-style
edge list and clean it; :func:`load_graph` additionally accepts a binary
cache written by :mod:`pipeline.graph.cache`.
"""

from __future__ import annotations

import logging
from pathlib import Path

from core.graph import Graph
from pipeline.graph.cache import is_graph_cache, load_graph_cache
from pipeline.normalize.clean import clean_edges, symmetrize

from .edges import read_edge_pairs

logger = logging.getLogger(__name__)


def load_edge_list(path: Path | str) -> Graph:
    """Load a directed edge list, dropping isolated nodes and relabelling ids."""

    src, dst = read_edge_pairs(path)
    graph = clean_edges(src, dst)
    logger.info("loaded %s: n=%d m=%d dead_ends=%d", path, graph.n, graph.m, graph.dead_ends.shape[0])
    return graph


def undirected_to_directed(path: Path | str) -> Graph:
    """Load an undirected edge list, turning each pair into two arcs."""

    src, dst = symmetrize(*read_edge_pairs(path))
    graph = clean_edges(src, dst)
    logger.info("loaded %s as undirected: n=%d m=%d", path, graph.n, graph.m)
    return graph


def load_graph(path: Path | str, undirected: bool = False) -> Graph:
    """Load ``path`` as a graph cache if it is one, else as an edge list."""

    if is_graph_cache(path):
        graph = load_graph_cache(path)
        logger.info("loaded cache %s: n=%d m=%d", path, graph.n, graph.m)
        return graph
    return undirected_to_directed(path) if undirected else load_edge_list(path)


__all__ = ["load_edge_list", "load_graph", "undirected_to_directed"]
