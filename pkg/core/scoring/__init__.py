"""Error metrics and ground truth."""

from .errors import ErrorReport, error_report, l1_error
from .groundtruth import ground_truth

__all__ = ["ErrorReport", "error_report", "ground_truth", "l1_error"]
