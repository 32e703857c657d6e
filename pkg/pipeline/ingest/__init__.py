"""Edge-list ingestion."""

from .ingest import load_edge_list, load_graph, undirected_to_directed

__all__ = ["load_edge_list", "load_graph", "undirected_to_directed"]
