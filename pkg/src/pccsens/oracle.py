"""Independent checks for the closed-form engine.

Statistics here are computed the textbook way: means first, then deviation
sums, over the literal augmented dataset. Nothing is borrowed from
:mod:`pccsens.moments`, and p-values come from SciPy's t distribution rather
than the package's own continued fraction. The engine is only called to obtain
the numbers being checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import special

from .engine import augmented_pcc, pcc_partials, primary_sensitivities
from .errors import DegenerateVarianceError, InputError
from .geometry import FeasibleRegion
from .moments import MomentSummary, Point2, from_dataset, summarize

__all__ = [
    "OracleReport",
    "PartialCheck",
    "pcc_two_pass",
    "augmented_pcc_batch",
    "reference_p_value",
    "lattice",
    "grid_sensitivities",
    "gradient_check",
    "hessian_det_at_mean",
    "hessian_det_numeric",
]

_BATCH_CELLS = 1 << 21


@dataclass(frozen=True)
class OracleReport:
    grid_delta_r: float
    grid_delta_p: float
    grid_witness: Point2
    grid_resolution: int
    grid_straddle: bool
    engine_delta_r: float
    engine_delta_p: float
    agree_within: float


class PartialCheck(NamedTuple):
    analytic: float
    numeric: float
    rel_err: float


def _as_xy(points) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(points, dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(arr)):
        raise InputError("non-finite coordinate in dataset")
    return arr[:, 0].copy(), arr[:, 1].copy()


def pcc_two_pass(points) -> float:
    """Pearson correlation by direct summation over deviations from the mean."""
    xs, ys = _as_xy(points)
    if xs.size < 2:
        raise InputError("need at least two points")
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateVarianceError()
    return float(np.dot(dx, dy)) / math.sqrt(sxx * syy)


def augmented_pcc_batch(points, gx, gy) -> np.ndarray:
    """Two-pass correlation of ``points + [(gx[k], gy[k])]`` for every k."""
    xs, ys = _as_xy(points)
    gx = np.asarray(gx, dtype=float).ravel()
    gy = np.asarray(gy, dtype=float).ravel()
    n = xs.size + 1
    out = np.empty(gx.size)
    step = max(1, _BATCH_CELLS // n)
    for lo in range(0, gx.size, step):
        hi = min(gx.size, lo + step)
        k = hi - lo
        X = np.empty((k, n))
        Y = np.empty((k, n))
        X[:, :-1] = xs
        Y[:, :-1] = ys
        X[:, -1] = gx[lo:hi]
        Y[:, -1] = gy[lo:hi]
        X -= X.mean(axis=1, keepdims=True)
        Y -= Y.mean(axis=1, keepdims=True)
        num = np.einsum("ij,ij->i", X, Y)
        den = np.sqrt(np.einsum("ij,ij->i", X, X) * np.einsum("ij,ij->i", Y, Y))
        out[lo:hi] = num / den
    return out


def reference_p_value(r, m: int):
    """Two-sided p-value via SciPy's Student t CDF; vectorised over ``r``."""
    r = np.clip(np.asarray(r, dtype=float), -1.0, 1.0)
    df = m - 2
    with np.errstate(divide="ignore"):
        t = np.abs(r) * np.sqrt(df / ((1.0 - r) * (1.0 + r)))
    return 2.0 * special.stdtr(df, -t)


def lattice(f: FeasibleRegion, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-major equidistant lattice over ``f``, corners included."""
    if resolution < 2:
        raise InputError("grid resolution must be >= 2")
    gx, gy = np.meshgrid(
        np.linspace(f.lx, f.ux, resolution),
        np.linspace(f.ly, f.uy, resolution),
        indexing="ij",
    )
    return gx.ravel(), gy.ravel()


def grid_sensitivities(
    points,
    f: FeasibleRegion,
    resolution: int,
    *,
    extra_points=(),
    engine_report=None,
) -> OracleReport:
    """Brute-force sensitivities over a lattice, compared against the engine.

    ``extra_points`` are appended to the lattice; passing the engine's own
    candidates must close the gap entirely. The p computation mirrors the
    engine's straddle rule: if lattice correlations of both signs occur, a
    zero crossing exists between them and p = 1 is attainable.
    """
    xs, ys = _as_xy(points)
    m = xs.size
    if m < 3:
        raise InputError("grid oracle needs at least three points")
    gx, gy = lattice(f, resolution)
    extra = np.asarray(extra_points, dtype=float).reshape(-1, 2)
    if extra.size:
        gx = np.concatenate([gx, extra[:, 0]])
        gy = np.concatenate([gy, extra[:, 1]])

    pts = np.column_stack([xs, ys])
    r0 = pcc_two_pass(pts)
    p0 = float(reference_p_value(r0, m))
    r_grid = augmented_pcc_batch(pts, gx, gy)
    p_grid = reference_p_value(r_grid, m + 1)

    r_gap = np.abs(r0 - r_grid)
    k = int(np.argmax(r_gap))
    grid_delta_r = float(r_gap[k])
    grid_delta_p = float(np.max(np.abs(p0 - p_grid)))
    straddle = bool(r_grid.max() >= 0.0 >= r_grid.min())
    if straddle:
        grid_delta_p = max(grid_delta_p, 1.0 - p0)

    if engine_report is None:
        engine_report = primary_sensitivities(summarize(from_dataset(pts)), f)
    e_r, e_p = engine_report.delta_r, engine_report.delta_p

    def rel(e: float, g: float) -> float:
        return abs(e - g) / max(abs(e), 1e-30)

    return OracleReport(
        grid_delta_r=grid_delta_r,
        grid_delta_p=grid_delta_p,
        grid_witness=Point2(float(gx[k]), float(gy[k])),
        grid_resolution=resolution,
        grid_straddle=straddle,
        engine_delta_r=e_r,
        engine_delta_p=e_p,
        agree_within=max(rel(e_r, grid_delta_r), rel(e_p, grid_delta_p)),
    )


def _second_differences(f, x: float, y: float, kx: float, ky: float) -> tuple[float, float, float]:
    f0 = f(x, y)
    dxx = (f(x + kx, y) - 2.0 * f0 + f(x - kx, y)) / (kx * kx)
    dyy = (f(x, y + ky) - 2.0 * f0 + f(x, y - ky)) / (ky * ky)
    dxy = (
        f(x + kx, y + ky) - f(x + kx, y - ky) - f(x - kx, y + ky) + f(x - kx, y - ky)
    ) / (4.0 * kx * ky)
    return dxx, dyy, dxy


def _rel_err(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def gradient_check(s: MomentSummary, p, h: float = 1e-5) -> dict[str, PartialCheck]:
    """Compare the closed-form partials with finite differences of :func:`augmented_pcc`.

    First partials use central differences with step ``h``; second partials
    start at step ``sqrt(h)`` and take two Richardson extrapolations over
    halved steps, since a plain second difference at ``h`` is swamped by
    rounding. The extra level keeps near-collinear data, where the Hessian
    determinant cancels heavily, within reach. Steps are scaled by
    ``max(1, |coordinate|)``.
    """
    if not h > 0.0:
        raise InputError("step must be positive")
    x, y = float(p[0]), float(p[1])

    def f(a: float, b: float) -> float:
        return augmented_pcc(s, (a, b))

    hx, hy = h * max(1.0, abs(x)), h * max(1.0, abs(y))
    num_dx = (f(x + hx, y) - f(x - hx, y)) / (2.0 * hx)
    num_dy = (f(x, y + hy) - f(x, y - hy)) / (2.0 * hy)

    k = math.sqrt(h)
    kx, ky = k * max(1.0, abs(x)), k * max(1.0, abs(y))
    d1, d2, d4 = (_second_differences(f, x, y, kx / m, ky / m) for m in (1.0, 2.0, 4.0))
    r1 = [(4.0 * b - a) / 3.0 for a, b in zip(d1, d2)]
    r2 = [(4.0 * b - a) / 3.0 for a, b in zip(d2, d4)]
    num_second = [(16.0 * b - a) / 15.0 for a, b in zip(r1, r2)]

    analytic = pcc_partials(s, (x, y))
    numeric = (num_dx, num_dy, *num_second)
    return {
        name: PartialCheck(a, nval, _rel_err(a, nval))
        for name, a, nval in zip(analytic._fields, analytic, numeric)
    }


def hessian_det_at_mean(s: MomentSummary) -> float:
    """Determinant of the Hessian of the augmented correlation at the data mean.

    Equals ``(r**2 - 1) / (N**2 sx**2 sy**2)`` with ``N = count + 1``; negative
    whenever |r| < 1, so the mean is a saddle.
    """
    if not (s.sx > 0.0 and s.sy > 0.0):
        raise DegenerateVarianceError()
    r = s.sxy / (s.sx * s.sy)
    n = s.count + 1
    return (r * r - 1.0) / (n * n * s.sx * s.sx * s.sy * s.sy)


def hessian_det_numeric(s: MomentSummary, k: float = 0.2) -> float:
    """Finite-difference Hessian determinant of the augmented correlation at the mean.

    Differencing in raw coordinates cancels catastrophically as |r| -> 1, so
    the Hessian is taken in standardized coordinates rotated by 45 degrees,
    ``p = mean + diag(sx, sy) R u``, where it is nearly diagonal. The
    determinant maps back through ``det H_p = det H_u / (sx sy)**2``. Steps
    are ``k * sqrt(count + 1)``, the scale on which the function varies, with
    two Richardson extrapolations as in :func:`gradient_check`.
    """
    if not (s.sx > 0.0 and s.sy > 0.0):
        raise DegenerateVarianceError()
    if not k > 0.0:
        raise InputError("step must be positive")
    c = math.sqrt(0.5)

    def g(u: float, v: float) -> float:
        return augmented_pcc(s, (s.mean_x + s.sx * c * (u + v), s.mean_y + s.sy * c * (u - v)))

    step = k * math.sqrt(s.count + 1)
    d1, d2, d4 = (_second_differences(g, 0.0, 0.0, step / m, step / m) for m in (1.0, 2.0, 4.0))
    r1 = [(4.0 * b - a) / 3.0 for a, b in zip(d1, d2)]
    r2 = [(4.0 * b - a) / 3.0 for a, b in zip(d2, d4)]
    guu, gvv, guv = ((16.0 * b - a) / 15.0 for a, b in zip(r1, r2))
    return (guu * gvv - guv * guv) / (s.sx * s.sy) ** 2
