"""Packaged defaults and configuration hashing.

Defaults are read from ``defaults.yaml`` next to this module.  The SHA-256 of
the raw document is exposed as :data:`CONFIG_HASH` so result files can be
traced back to the constants that produced them.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Dict

import yaml

CONFIG_PATH = Path(__file__).resolve().parent / "defaults.yaml"


def load_defaults(path: Path | None = None) -> Dict[str, Any]:
    """Return the parsed defaults document at ``path`` (packaged file by default)."""

    data = yaml.safe_load((path or CONFIG_PATH).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError(f"defaults document {path or CONFIG_PATH} is not a mapping")
    return data


def cfg_hash(cfg: dict) -> str:
    """Return a stable hash for a configuration dictionary."""

    data = json.dumps(cfg, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(data.encode()).hexdigest()


DEFAULTS = load_defaults()
CONFIG_HASH = hashlib.sha256(CONFIG_PATH.read_bytes()).hexdigest()

DEFAULT_ALPHA: float = float(DEFAULTS["query"]["alpha"])
DEFAULT_EPOCH_NUM: int = int(DEFAULTS["query"]["epoch_num"])
SCAN_THRESHOLD_DIVISOR: int = int(DEFAULTS["query"]["scan_threshold_divisor"])
LAMBDA_CAP: float = float(DEFAULTS["query"]["lambda_cap"])
CHECKPOINT_FACTOR: int = int(DEFAULTS["bench"]["checkpoint_factor"])
GROUND_TRUTH_LAMBDA: float = float(DEFAULTS["bench"]["ground_truth_lambda"])
CROSS_CHECK_TOLERANCE: float = float(DEFAULTS["bench"]["cross_check_tolerance"])
ORACLE_MAX_NODES: int = int(DEFAULTS["oracle"]["max_nodes"])
R_SUM_DRIFT_TOLERANCE: float = float(DEFAULTS["guards"]["r_sum_drift"])


def default_lambda(m: int) -> float:
    """ℓ1 threshold used when none is given: ``min(1/m, 1e-8)``."""

    if m <= 0:
        raise ValueError("m must be positive")
    return min(1.0 / m, LAMBDA_CAP)


__all__ = [
    "CONFIG_HASH",
    "CONFIG_PATH",
    "DEFAULTS",
    "DEFAULT_ALPHA",
    "DEFAULT_EPOCH_NUM",
    "SCAN_THRESHOLD_DIVISOR",
    "LAMBDA_CAP",
    "CHECKPOINT_FACTOR",
    "GROUND_TRUTH_LAMBDA",
    "CROSS_CHECK_TOLERANCE",
    "ORACLE_MAX_NODES",
    "R_SUM_DRIFT_TOLERANCE",
    "cfg_hash",
    "default_lambda",
    "load_defaults",
]
