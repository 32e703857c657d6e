"""Edge-list parsing.

The accepted format is the plain SNAP style: one ``src dst`` pair of
non-negative integers per line, separated by whitespace.  Blank lines and
lines starting with ``#`` are skipped.
"""

from __future__ import annotations

from pathlib import Path
from typing import Tuple

import numpy as np

from core.errors import GraphFormatError


def read_edge_pairs(path: Path | str) -> Tuple[np.ndarray, np.ndarray]:
    """Return ``(src, dst)`` arrays of the raw ids in file order.

    Raises
    ------
    GraphFormatError
        On the first malformed line; the error carries its 1-based number.
    """

    src: list[int] = []
    dst: list[int] = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphFormatError(f"expected 'src dst', got {line!r}", line=lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"non-integer node id in {line!r}", line=lineno) from None
            if u < 0 or v < 0:
                raise GraphFormatError(f"negative node id in {line!r}", line=lineno)
            src.append(u)
            dst.append(v)
    return np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64)


__all__ = ["read_edge_pairs"]
