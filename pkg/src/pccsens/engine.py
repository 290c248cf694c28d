"""Worst-case change of the correlation and its p-value from one added point.

Everything here consumes a :class:`~pccsens.moments.MomentSummary`, never the
raw data, so a sensitivity query costs O(1) once the moments are known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InputError, PValueUndefinedError
from .geometry import FeasibleRegion, candidate_set
from .moments import MomentSummary, OnlineMoments, Point2, summarize, update
from .stats import p_value, pcc

__all__ = [
    "Witness",
    "CandidateEvaluation",
    "SensitivityReport",
    "StreamRecord",
    "Partials",
    "augmented_pcc",
    "augmented_pcc_grid",
    "pcc_partials",
    "primary_sensitivities",
    "stream_step",
]

TIE_TOL = 1e-12
PREDICTION_SLACK = 1e-9


class Witness(NamedTuple):
    point: Point2 | None  # None only for the stationary (straddle) p witness
    label: str
    value: float


class CandidateEvaluation(NamedTuple):
    point: Point2
    label: str
    r_aug: float
    p_aug: float | None


@dataclass(frozen=True)
class SensitivityReport:
    """Primary sensitivities of a dataset within a feasible region.

    ``reduced`` marks a two-point dataset, for which no p-value exists: the
    p fields are then ``None`` and only ``delta_r`` is meaningful.
    """

    count: int
    r_current: float
    p_current: float | None
    delta_r: float
    delta_p: float | None
    witness_r: Witness
    witness_p: Witness | None
    straddle: bool
    candidates: tuple[CandidateEvaluation, ...]
    reduced: bool = False


@dataclass(frozen=True)
class StreamRecord:
    index: int
    report_before: SensitivityReport
    observed_delta_r: float
    within_prediction: bool
    point_in_region: bool


class Partials(NamedTuple):
    dx: float
    dy: float
    dxx: float
    dyy: float
    dxy: float


def _check_point(p) -> tuple[float, float]:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InputError(f"non-finite coordinate in point ({x}, {y})")
    return x, y


def augmented_pcc(s: MomentSummary, p) -> float:
    """Correlation of the dataset behind ``s`` with ``p`` appended."""
    x, y = _check_point(p)
    r = pcc(s)
    n = s.count + 1
    dx = x - s.mean_x
    dy = y - s.mean_y
    num = n * r * s.sx * s.sy + dx * dy
    den = math.sqrt((n * s.sx * s.sx + dx * dx) * (n * s.sy * s.sy + dy * dy))
    return max(-1.0, min(1.0, num / den))


def augmented_pcc_grid(s: MomentSummary, xs, ys) -> np.ndarray:
    """Vectorised :func:`augmented_pcc` over broadcastable coordinate arrays."""
    r = pcc(s)
    n = s.count + 1
    dx = np.asarray(xs, dtype=float) - s.mean_x
    dy = np.asarray(ys, dtype=float) - s.mean_y
    num = n * r * s.sx * s.sy + dx * dy
    den = np.sqrt((n * s.sx * s.sx + dx * dx) * (n * s.sy * s.sy + dy * dy))
    return np.clip(num / den, -1.0, 1.0)


def pcc_partials(s: MomentSummary, p) -> Partials:
    """Closed-form first and second partials of :func:`augmented_pcc` at ``p``."""
    x, y = _check_point(p)
    r = pcc(s)
    n = s.count + 1
    sx, sy = s.sx, s.sy
    dx = x - s.mean_x
    dy = y - s.mean_y
    a = n * sx * sx + dx * dx
    b = n * sy * sy + dy * dy
    ra, rb = math.sqrt(a), math.sqrt(b)
    return Partials(
        dx=n * sx * (sx * dy - r * sy * dx) / (a * ra * rb),
        dy=n * sy * (sy * dx - r * sx * dy) / (ra * b * rb),
        dxx=n * sx * (2 * r * sy * dx * dx - n * r * sx * sx * sy - 3 * sx * dx * dy)
        / (a * a * ra * rb),
        dyy=n * sy * (2 * r * sx * dy * dy - n * r * sx * sy * sy - 3 * sy * dx * dy)
        / (ra * b * b * rb),
        dxy=n * sx * sy * (n * sx * sy + r * dx * dy) / (a * ra * b * rb),
    )


def _first_at_max(values: list[float]) -> int:
    top = max(values)
    return next(i for i, v in enumerate(values) if v >= top - TIE_TOL)


def primary_sensitivities(
    s: MomentSummary, f: FeasibleRegion, *, allow_reduced: bool = False
) -> SensitivityReport:
    """Exact worst-case |change| of r and p over every new point in ``f``.

    Candidates are evaluated in label order, so ties resolve to the first
    corner, then the first intersection. Augmented p-values use the enlarged
    cardinality ``count + 1``. When the candidate correlations straddle zero a
    point with r = 0 (hence p = 1) exists inside ``f``, and ``delta_p`` is
    raised to at least ``1 - p_current``.

    With ``allow_reduced=True`` a two-point dataset yields a report carrying
    only ``delta_r``.
    """
    reduced = s.count == 2 and allow_reduced
    if s.count < 3 and not reduced:
        raise PValueUndefinedError()

    r_cur = pcc(s)
    p_cur = None if reduced else p_value(r_cur, s.count).p
    cands = candidate_set(s, f)

    evals: list[CandidateEvaluation] = []
    for point, label in cands:
        r_aug = augmented_pcc(s, point)
        p_aug = p_value(r_aug, s.count + 1).p
        evals.append(CandidateEvaluation(point, label, r_aug, p_aug))

    r_gaps = [abs(r_cur - e.r_aug) for e in evals]
    i_r = _first_at_max(r_gaps)
    witness_r = Witness(evals[i_r].point, evals[i_r].label, evals[i_r].r_aug)
    r_values = [e.r_aug for e in evals]
    straddle = max(r_values) >= 0.0 >= min(r_values)

    delta_p = None
    witness_p = None
    if not reduced:
        p_gaps = [abs(p_cur - e.p_aug) for e in evals]
        i_p = _first_at_max(p_gaps)
        delta_p = p_gaps[i_p]
        witness_p = Witness(evals[i_p].point, evals[i_p].label, evals[i_p].p_aug)
        if straddle and 1.0 - p_cur > delta_p:
            delta_p = 1.0 - p_cur
            witness_p = Witness(None, "stationary", 1.0)

    return SensitivityReport(
        count=s.count,
        r_current=r_cur,
        p_current=p_cur,
        delta_r=r_gaps[i_r],
        delta_p=delta_p,
        witness_r=witness_r,
        witness_p=witness_p,
        straddle=straddle,
        candidates=tuple(evals),
        reduced=reduced,
    )


def stream_step(
    state: OnlineMoments, p, f: FeasibleRegion
) -> tuple[StreamRecord, OnlineMoments]:
    """Predict the worst case for the next point, then absorb ``p`` and compare."""
    summary = summarize(state)
    report = primary_sensitivities(summary, f)
    new_state = update(state, p)
    r_after = pcc(summarize(new_state))
    observed = abs(r_after - report.r_current)
    record = StreamRecord(
        index=state.count,
        report_before=report,
        observed_delta_r=observed,
        within_prediction=observed <= report.delta_r + PREDICTION_SLACK,
        point_in_region=f.contains(p),
    )
    return record, new_state
