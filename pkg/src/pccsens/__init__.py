"""Exact worst-case sensitivity of Pearson's r and its p-value to one new point.

Typical use::

    from pccsens import from_dataset, summarize, FeasibleRegion, primary_sensitivities

    s = summarize(from_dataset([(0, 0), (1, 1), (2, 0)]))
    report = primary_sensitivities(s, FeasibleRegion(0, 2, 0, 1))
    report.delta_r, report.delta_p
"""

from .engine import (
    SensitivityReport,
    StreamRecord,
    augmented_pcc,
    augmented_pcc_grid,
    pcc_partials,
    primary_sensitivities,
    stream_step,
)
from .errors import (
    DegenerateVarianceError,
    InputError,
    InsufficientDataError,
    InternalError,
    PValueUndefinedError,
    SensitivityError,
)
from .geometry import FeasibleRegion, blue_lines, candidate_set, corner_points, intersection_points
from .moments import MomentSummary, OnlineMoments, Point2, from_dataset, summarize, update
from .stats import TTestResult, p_value, pcc, t_cdf

__version__ = "0.1.0"

__all__ = [
    "DegenerateVarianceError",
    "FeasibleRegion",
    "InputError",
    "InsufficientDataError",
    "InternalError",
    "MomentSummary",
    "OnlineMoments",
    "PValueUndefinedError",
    "Point2",
    "SensitivityError",
    "SensitivityReport",
    "StreamRecord",
    "TTestResult",
    "augmented_pcc",
    "augmented_pcc_grid",
    "blue_lines",
    "candidate_set",
    "corner_points",
    "from_dataset",
    "intersection_points",
    "p_value",
    "pcc",
    "pcc_partials",
    "primary_sensitivities",
    "stream_step",
    "summarize",
    "t_cdf",
    "update",
]
