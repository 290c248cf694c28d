"""Streaming bivariate moments via Welford's recurrences.

The accumulator stores co-moment *sums* (the ``m2_*`` and ``c_xy`` fields)
rather than variances. Biased statistics are derived on demand by dividing by the
count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import DegenerateVarianceError, InputError, InsufficientDataError

__all__ = [
    "Point2",
    "OnlineMoments",
    "MomentSummary",
    "from_dataset",
    "update",
    "summarize",
    "is_degenerate",
]

_CHUNK = 1 << 16
_DEGENERATE_FLOOR = 1e-24


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True, slots=True)
class OnlineMoments:
    """Welford accumulator for a bivariate dataset."""

    count: int = 0
    mean_x: float = 0.0
    mean_y: float = 0.0
    m2_x: float = 0.0
    m2_y: float = 0.0
    c_xy: float = 0.0

    def update(self, p: Point2 | tuple[float, float]) -> "OnlineMoments":
        return update(self, p)


@dataclass(frozen=True, slots=True)
class MomentSummary:
    """Biased (divide-by-count) summary statistics of a dataset."""

    count: int
    mean_x: float
    mean_y: float
    sx: float
    sy: float
    sxy: float


def _iter_pairs(points) -> Iterator[tuple[float, float]]:
    if isinstance(points, np.ndarray):
        arr = points.reshape(-1, 2) if points.size else points.reshape(0, 2)
        for start in range(0, arr.shape[0], _CHUNK):
            block = arr[start:start + _CHUNK]
            yield from zip(block[:, 0].tolist(), block[:, 1].tolist())
    else:
        for p in points:
            x, y = p
            yield float(x), float(y)


def _fold(
    state: tuple[int, float, float, float, float, float],
    pairs: Iterable[tuple[float, float]],
    offset: int = 0,
) -> tuple[int, float, float, float, float, float]:
    n, mx, my, sxx, syy, sxy = state
    isfinite = math.isfinite
    for i, (x, y) in enumerate(pairs):
        if not (isfinite(x) and isfinite(y)):
            raise InputError(f"non-finite coordinate at index {i + offset}")
        n += 1
        dx = x - mx
        dy = y - my
        mx += dx / n
        my += dy / n
        sxx += dx * (x - mx)
        syy += dy * (y - my)
        sxy += dx * (y - my)
    # underflow in a squared deviation can leave |sxy| above the bound
    bound = math.sqrt(sxx * syy)
    if abs(sxy) > bound:
        sxy = math.copysign(bound, sxy)
    return n, mx, my, sxx, syy, sxy


def from_dataset(points) -> OnlineMoments:
    """Absorb ``points`` in a single pass.

    ``points`` may be any iterable of ``(x, y)`` pairs or an ``(n, 2)`` array.
    Arrays are walked in fixed-size chunks so working memory stays constant.
    """
    return OnlineMoments(*_fold((0, 0.0, 0.0, 0.0, 0.0, 0.0), _iter_pairs(points)))


def update(m: OnlineMoments, p) -> OnlineMoments:
    """Return a new accumulator with ``p`` absorbed; ``m`` is left untouched."""
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InputError(f"non-finite coordinate in point ({x}, {y})")
    state = (m.count, m.mean_x, m.mean_y, m.m2_x, m.m2_y, m.c_xy)
    return OnlineMoments(*_fold(state, ((x, y),)))


def is_degenerate(m2: float, mean: float, count: int) -> bool:
    """Scale-aware test for a (numerically) zero spread along one axis."""
    return m2 <= _DEGENERATE_FLOOR * max(1.0, mean * mean) * count


def summarize(m: OnlineMoments) -> MomentSummary:
    if m.count < 2:
        raise InsufficientDataError()
    if is_degenerate(m.m2_x, m.mean_x, m.count) or is_degenerate(m.m2_y, m.mean_y, m.count):
        raise DegenerateVarianceError()
    n = m.count
    return MomentSummary(
        count=n,
        mean_x=m.mean_x,
        mean_y=m.mean_y,
        sx=math.sqrt(m.m2_x / n),
        sy=math.sqrt(m.m2_y / n),
        sxy=m.c_xy / n,
    )
