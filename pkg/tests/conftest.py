from fractions import Fraction

import numpy as np
import pytest

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def exact_moments(points):
    """Two-pass moments in exact rational arithmetic: (mean_x, mean_y, sxx, syy, sxy) as sums."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    n = len(pts)
    mx = sum(p[0] for p in pts) / n
    my = sum(p[1] for p in pts) / n
    sxx = sum((p[0] - mx) ** 2 for p in pts)
    syy = sum((p[1] - my) ** 2 for p in pts)
    sxy = sum((p[0] - mx) * (p[1] - my) for p in pts)
    return mx, my, sxx, syy, sxy


def two_pass_sums(points):
    arr = np.asarray(points, dtype=float)
    dx = arr[:, 0] - arr[:, 0].mean()
    dy = arr[:, 1] - arr[:, 1].mean()
    return arr[:, 0].mean(), arr[:, 1].mean(), dx @ dx, dy @ dy, dx @ dy


def random_case(rng: np.random.Generator, *, min_n: int = 3, max_n: int = 40):
    """A random dataset plus a random rectangle that may or may not cover it."""
    from pccsens import FeasibleRegion

    n = int(rng.integers(min_n, max_n + 1))
    scale = rng.uniform(0.5, 5.0, size=2)
    centre = rng.uniform(-5.0, 5.0, size=2)
    pts = centre + scale * rng.standard_normal((n, 2)) @ rng.uniform(-1, 1, (2, 2))
    lo = pts.min(axis=0) - rng.uniform(-0.5, 1.0, size=2) * scale
    hi = pts.max(axis=0) + rng.uniform(-0.5, 1.0, size=2) * scale
    lo, hi = np.minimum(lo, hi), np.maximum(lo, hi)
    return pts, FeasibleRegion(lo[0], hi[0], lo[1], hi[1])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


FIXTURE_3 = [(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]
FIXTURE_LINE = [(0.0, 0.0), (1.0, 1.0), (2.0, 1.0)]
