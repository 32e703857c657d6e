"""Dataset cleaning."""
