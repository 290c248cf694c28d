"""Feasible rectangle and the candidate extremum set built from the least-squares lines.

The augmented correlation attains its extrema over the rectangle only at a
corner or where one of the two regression lines crosses an edge. Both lines
are computed from the current dataset, before any point is added.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DegenerateVarianceError, InputError
from .moments import MomentSummary, Point2

__all__ = [
    "FeasibleRegion",
    "BlueLines",
    "Candidate",
    "CandidateSet",
    "LABELS",
    "corner_points",
    "blue_lines",
    "intersection_points",
    "candidate_set",
]

CORNER_LABELS = ("corner-ll", "corner-lu", "corner-ul", "corner-uu")
INTERSECTION_LABELS = ("ix-lower", "ix-upper", "iy-left", "iy-right")
LABELS = CORNER_LABELS + INTERSECTION_LABELS

SLOPE_ZERO = 1e-300
EDGE_SNAP = 1e-12
DEDUP_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class FeasibleRegion:
    """Axis-aligned rectangle ``[lx, ux] x [ly, uy]``; zero width or height is allowed."""

    lx: float
    ux: float
    ly: float
    uy: float

    def __post_init__(self) -> None:
        # plain floats, so candidates and JSON output never carry ints or NumPy scalars
        for name in ("lx", "ux", "ly", "uy"):
            try:
                object.__setattr__(self, name, float(getattr(self, name)))
            except (TypeError, ValueError):
                raise InputError(f"region bound {name} is not a number: {getattr(self, name)!r}") from None
        bounds = (self.lx, self.ux, self.ly, self.uy)
        if not all(math.isfinite(v) for v in bounds):
            raise InputError(f"region bounds must be finite, got {bounds}")
        if self.lx > self.ux or self.ly > self.uy:
            raise InputError(f"region bounds must satisfy lx <= ux and ly <= uy, got {bounds}")

    @property
    def width(self) -> float:
        return self.ux - self.lx

    @property
    def height(self) -> float:
        return self.uy - self.ly

    def contains(self, p) -> bool:
        x, y = p
        return self.lx <= x <= self.ux and self.ly <= y <= self.uy


@dataclass(frozen=True, slots=True)
class BlueLines:
    """Least-squares lines ``y = alpha_x + beta_x x`` and ``x = alpha_y + beta_y y``."""

    beta_x: float
    alpha_x: float
    beta_y: float
    alpha_y: float


class Candidate(NamedTuple):
    point: Point2
    label: str


@dataclass(frozen=True, slots=True)
class CandidateSet:
    points: tuple[Candidate, ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def corner_points(f: FeasibleRegion) -> list[Point2]:
    return [
        Point2(f.lx, f.ly),
        Point2(f.lx, f.uy),
        Point2(f.ux, f.ly),
        Point2(f.ux, f.uy),
    ]


def blue_lines(s: MomentSummary) -> BlueLines:
    if not (s.sx > 0.0 and s.sy > 0.0):
        raise DegenerateVarianceError()
    beta_x = s.sxy / (s.sx * s.sx)
    beta_y = s.sxy / (s.sy * s.sy)
    return BlueLines(
        beta_x=beta_x,
        alpha_x=s.mean_y - beta_x * s.mean_x,
        beta_y=beta_y,
        alpha_y=s.mean_x - beta_y * s.mean_y,
    )


def _snap(v: float, lo: float, hi: float) -> float:
    slack = EDGE_SNAP * (hi - lo)
    if lo - slack <= v < lo:
        return lo
    if hi < v <= hi + slack:
        return hi
    return v


def _labelled_intersections(
    b: BlueLines, s: MomentSummary, f: FeasibleRegion
) -> list[Candidate]:
    out: list[Candidate] = []
    # Anchored at the mean (both lines pass through it) rather than at the
    # intercepts, which lose digits when the data sit far from the origin.
    if abs(b.beta_x) >= SLOPE_ZERO:
        for label, y_edge in (("ix-lower", f.ly), ("ix-upper", f.uy)):
            x = s.mean_x + (y_edge - s.mean_y) / b.beta_x
            if math.isfinite(x):
                x = _snap(x, f.lx, f.ux)
                if f.lx <= x <= f.ux:
                    out.append(Candidate(Point2(x, y_edge), label))
    if abs(b.beta_y) >= SLOPE_ZERO:
        for label, x_edge in (("iy-left", f.lx), ("iy-right", f.ux)):
            y = s.mean_y + (x_edge - s.mean_x) / b.beta_y
            if math.isfinite(y):
                y = _snap(y, f.ly, f.uy)
                if f.ly <= y <= f.uy:
                    out.append(Candidate(Point2(x_edge, y), label))
    return out


def intersection_points(b: BlueLines, s: MomentSummary, f: FeasibleRegion) -> list[Point2]:
    """Feasible crossings of the regression lines with the rectangle's edges.

    The y-on-x line is cut by the horizontal edges and the x-on-y line by the
    vertical edges. Slopes below ``SLOPE_ZERO`` count as parallel and yield
    nothing. Order: lower, upper, left, right.
    """
    return [c.point for c in _labelled_intersections(b, s, f)]


def candidate_set(s: MomentSummary, f: FeasibleRegion) -> CandidateSet:
    """Corners followed by feasible intersections, deduplicated first-wins."""
    raw = [Candidate(p, lab) for p, lab in zip(corner_points(f), CORNER_LABELS)]
    raw.extend(_labelled_intersections(blue_lines(s), s, f))
    tol = DEDUP_TOL * max(f.width, f.height)
    kept: list[Candidate] = []
    for cand in raw:
        px, py = cand.point
        if any(abs(px - k.point.x) <= tol and abs(py - k.point.y) <= tol for k in kept):
            continue
        kept.append(cand)
    return CandidateSet(tuple(kept))
