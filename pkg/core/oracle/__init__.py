"""Dense exact solver used as the reference in tests and ground truth checks."""

from .dense import DensePPR, exact_ppr

__all__ = ["DensePPR", "exact_ppr"]
