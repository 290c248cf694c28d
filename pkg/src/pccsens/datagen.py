"""Synthetic datasets and the engine-vs-grid agreement benchmark.

Random streams come from NumPy's PCG64 bit generator. Gaussian draws use
NumPy's ziggurat sampler and Dirichlet draws are normalised Gamma variates
(Marsaglia-Tsang), of which the first two components become ``(x, y)``.

Every trial gets its own generator, seeded from
``SeedSequence(seed, spawn_key=(kind, size, trial, attempt))``, so results do
not depend on the order in which trials are run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .engine import primary_sensitivities
from .errors import DegenerateVarianceError, InputError, InternalError
from .geometry import FeasibleRegion
from .moments import from_dataset, summarize
from .oracle import grid_sensitivities

__all__ = [
    "KINDS",
    "DistributionSpec",
    "TrialRecord",
    "BenchCell",
    "BenchReport",
    "make_rng",
    "sample",
    "sample_with_outliers",
    "bounding_box",
    "trial_seed",
    "run_benchmark",
]

KINDS = ("uniform", "gaussian", "dirichlet", "contaminated")

UNIFORM_HALF_WIDTH = 10.0
OUTLIER_HALF_WIDTH = 30.0
OUTLIER_FRACTION = 0.1
DIRICHLET_ALPHA_MAX = 10.0
SIGMA_DET_MIN = 1e-12
SIGMA_MAX_REDRAWS = 100
MAX_RESAMPLES = 50


@dataclass(frozen=True)
class DistributionSpec:
    kind: str
    size: int
    seed: int

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InputError(f"unknown distribution kind {self.kind!r}; expected one of {KINDS}")
        if self.size < 1:
            raise InputError("size must be positive")
        if not 0 <= self.seed < 2**64:
            raise InputError("seed must be a 64-bit unsigned integer")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _gaussian(rng: np.random.Generator, size: int) -> np.ndarray:
    # rows z @ A have covariance A^T A
    for _ in range(SIGMA_MAX_REDRAWS):
        a = rng.uniform(0.0, 1.0, size=(2, 2))
        if np.linalg.det(a.T @ a) >= SIGMA_DET_MIN:
            return rng.standard_normal((size, 2)) @ a
    raise InputError("could not draw a non-singular covariance matrix")


def sample_with_outliers(spec: DistributionSpec) -> tuple[np.ndarray, np.ndarray]:
    """Like :func:`sample` but also returns the indices replaced by outliers."""
    rng = make_rng(spec.seed)
    replaced = np.empty(0, dtype=np.intp)
    if spec.kind == "uniform":
        pts = rng.uniform(-UNIFORM_HALF_WIDTH, UNIFORM_HALF_WIDTH, size=(spec.size, 2))
    elif spec.kind == "dirichlet":
        alpha = rng.uniform(0.0, DIRICHLET_ALPHA_MAX, size=3)
        while np.any(alpha <= 0.0):
            alpha = rng.uniform(0.0, DIRICHLET_ALPHA_MAX, size=3)
        pts = rng.dirichlet(alpha, size=spec.size)[:, :2].copy()
    else:
        pts = _gaussian(rng, spec.size)
        if spec.kind == "contaminated":
            k = int(OUTLIER_FRACTION * spec.size)
            replaced = np.sort(rng.choice(spec.size, size=k, replace=False))
            pts[replaced] = rng.uniform(-OUTLIER_HALF_WIDTH, OUTLIER_HALF_WIDTH, size=(k, 2))
    return pts, replaced


def sample(spec: DistributionSpec) -> np.ndarray:
    """Draw ``spec.size`` points as an ``(size, 2)`` array; deterministic in ``spec.seed``."""
    return sample_with_outliers(spec)[0]


def bounding_box(points) -> FeasibleRegion:
    arr = np.asarray(points, dtype=float).reshape(-1, 2)
    if arr.shape[0] == 0:
        raise InputError("bounding box of an empty dataset")
    lo = arr.min(axis=0)
    hi = arr.max(axis=0)
    return FeasibleRegion(float(lo[0]), float(hi[0]), float(lo[1]), float(hi[1]))


def trial_seed(seed: int, kind: str, size: int, trial: int, attempt: int = 0) -> int:
    ss = np.random.SeedSequence(seed, spawn_key=(KINDS.index(kind), size, trial, attempt))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class TrialRecord:
    kind: str
    size: int
    trial: int
    seed: int
    engine_delta_r: float
    grid_delta_r: float
    augmented_grid_delta_r: float
    rel_gap: float
    agrees: bool
    straddle: bool
    p_current: float
    engine_delta_p: float
    candidate_delta_p: float


@dataclass
class BenchCell:
    trials: int = 0
    agree_count: int = 0
    max_rel_gap: float = 0.0
    resamples: int = 0
    dominance_violations: int = 0

    @property
    def agreement_rate(self) -> float:
        return self.agree_count / self.trials if self.trials else 0.0


@dataclass
class BenchReport:
    cells: dict[tuple[str, int], BenchCell]
    records: list[TrialRecord] = field(default_factory=list)
    grid_resolution: int = 10
    rel_tol: float = 1e-5
    seed: int = 0

    @property
    def trials(self) -> int:
        return sum(c.trials for c in self.cells.values())

    @property
    def agree_count(self) -> int:
        return sum(c.agree_count for c in self.cells.values())

    @property
    def agreement_rate(self) -> float:
        return self.agree_count / self.trials if self.trials else 0.0

    def rows(self) -> list[dict]:
        return [
            {
                "kind": kind,
                "size": size,
                "trials": c.trials,
                "agree_count": c.agree_count,
                "agreement_rate": c.agreement_rate,
                "max_rel_gap": c.max_rel_gap,
                "resamples": c.resamples,
                "dominance_violations": c.dominance_violations,
            }
            for (kind, size), c in self.cells.items()
        ]


def _one_trial(
    kind: str,
    size: int,
    trial: int,
    seed: int,
    resolution: int,
    rel_tol: float,
    cell: BenchCell,
    augmented: bool,
) -> TrialRecord:
    for attempt in range(MAX_RESAMPLES):
        s_seed = trial_seed(seed, kind, size, trial, attempt)
        pts = sample(DistributionSpec(kind, size, s_seed))
        f = bounding_box(pts)
        try:
            report = primary_sensitivities(summarize(from_dataset(pts)), f)
        except DegenerateVarianceError:
            cell.resamples += 1
            continue
        break
    else:
        raise InternalError(f"{kind}/{size}/trial {trial}: every resample was degenerate")

    grid = grid_sensitivities(pts, f, resolution, engine_report=report)
    aug_delta_r = float("nan")
    if augmented:
        cand_pts = [c.point for c in report.candidates]
        aug = grid_sensitivities(pts, f, resolution, extra_points=cand_pts, engine_report=report)
        aug_delta_r = aug.grid_delta_r
    gap = abs(report.delta_r - grid.grid_delta_r) / max(abs(report.delta_r), 1e-30)
    cand_delta_p = max(abs(report.p_current - c.p_aug) for c in report.candidates)
    return TrialRecord(
        kind=kind,
        size=size,
        trial=trial,
        seed=s_seed,
        engine_delta_r=report.delta_r,
        grid_delta_r=grid.grid_delta_r,
        augmented_grid_delta_r=aug_delta_r,
        rel_gap=gap,
        agrees=gap <= rel_tol,
        straddle=report.straddle,
        p_current=report.p_current,
        engine_delta_p=report.delta_p,
        candidate_delta_p=cand_delta_p,
    )


def run_benchmark(
    trials: int = 100,
    sizes=(10, 50, 100),
    grid_resolution: int = 10,
    rel_tol: float = 1e-5,
    seed: int = 0,
    kinds=KINDS,
    augmented: bool = True,
) -> BenchReport:
    """Engine vs. lattice search on bounding-box regions of synthetic data.

    A trial agrees when the engine's ``delta_r`` and the lattice maximum differ
    by at most ``rel_tol`` relative to the engine value. Each trial also
    reruns the lattice with the engine's candidates appended unless
    ``augmented`` is false (its record field is then NaN). Trials whose
    sample has a degenerate variance are redrawn and tallied in ``resamples``.
    """
    if trials < 1 or grid_resolution < 2:
        raise InputError("trials must be >= 1 and grid_resolution >= 2")
    cells: dict[tuple[str, int], BenchCell] = {}
    records: list[TrialRecord] = []
    for kind in kinds:
        if kind not in KINDS:
            raise InputError(f"unknown distribution kind {kind!r}")
        for size in sizes:
            if size < 3:
                raise InputError("benchmark sizes must be >= 3")
            cell = cells.setdefault((kind, int(size)), BenchCell())
            for trial in range(trials):
                rec = _one_trial(kind, int(size), trial, seed, grid_resolution, rel_tol, cell, augmented)
                cell.trials += 1
                cell.agree_count += rec.agrees
                cell.max_rel_gap = max(cell.max_rel_gap, rec.rel_gap)
                if rec.grid_delta_r > rec.engine_delta_r + 1e-9:
                    cell.dominance_violations += 1
                records.append(rec)
    return BenchReport(cells, records, grid_resolution, rel_tol, seed)
