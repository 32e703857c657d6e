"""Approximate SSPPR: walk budget, random walks, walk index and SpeedPPR."""

from .budget import WalkBudget, compute_walk_budget
from .index import WalkIndex, build_index, load_index, save_index
from .speedppr import monte_carlo_phase, speedppr_query
from .walks import FreshWalks, IndexedWalks, WalkSource, random_walk, walk_terminals

__all__ = [
    "FreshWalks",
    "IndexedWalks",
    "WalkBudget",
    "WalkIndex",
    "WalkSource",
    "build_index",
    "compute_walk_budget",
    "load_index",
    "monte_carlo_phase",
    "random_walk",
    "save_index",
    "speedppr_query",
    "walk_terminals",
]
