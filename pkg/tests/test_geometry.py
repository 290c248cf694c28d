import numpy as np
import pytest

from conftest import FIXTURE_3, FIXTURE_LINE, random_case
from pccsens import (
    DegenerateVarianceError,
    FeasibleRegion,
    InputError,
    MomentSummary,
    augmented_pcc,
    blue_lines,
    candidate_set,
    corner_points,
    from_dataset,
    intersection_points,
    summarize,
)
from pccsens.geometry import LABELS
from pccsens.oracle import augmented_pcc_batch, lattice


def S(points):
    return summarize(from_dataset(points))


@pytest.mark.parametrize(
    "bounds, expected",
    [
        ((0, 1, 0, 1), [(0, 0), (0, 1), (1, 0), (1, 1)]),
        ((2, 2, 3, 5), [(2, 3), (2, 5), (2, 3), (2, 5)]),
        ((0, 2, 0, 1), [(0, 0), (0, 1), (2, 0), (2, 1)]),
    ],
)
def test_corner_points(bounds, expected):
    assert corner_points(FeasibleRegion(*bounds)) == expected


@pytest.mark.parametrize(
    "bounds",
    [(1, 0, 0, 1), (0, 1, 1, 0), (0, float("inf"), 0, 1), (float("nan"), 1, 0, 1), ("a", 1, 0, 1), (None, 1, 0, 1)],
)
def test_region_validation(bounds):
    with pytest.raises(InputError):
        FeasibleRegion(*bounds)


def test_region_bounds_become_floats():
    f = FeasibleRegion(0, 2, np.float32(0.5), 1)
    assert all(type(v) is float for v in (f.lx, f.ux, f.ly, f.uy))
    assert corner_points(f)[0] == (0.0, 0.5)


def test_region_contains_inclusive():
    f = FeasibleRegion(0, 2, 0, 1)
    assert f.contains((0, 0)) and f.contains((2, 1)) and not f.contains((2.0000001, 1))


def test_blue_lines_hand_values():
    b = blue_lines(S(FIXTURE_LINE))
    assert b.beta_x == pytest.approx(0.5, abs=1e-12)
    assert b.alpha_x == pytest.approx(1 / 6, abs=1e-12)
    assert b.beta_y == pytest.approx(1.5, abs=1e-12)
    assert b.alpha_y == pytest.approx(0.0, abs=1e-12)
    # independent least-squares oracle in both directions
    arr = np.array(FIXTURE_LINE)
    slope_x, icpt_x = np.polyfit(arr[:, 0], arr[:, 1], 1)
    slope_y, icpt_y = np.polyfit(arr[:, 1], arr[:, 0], 1)
    assert (b.beta_x, b.alpha_x) == pytest.approx((slope_x, icpt_x), abs=1e-12)
    assert (b.beta_y, b.alpha_y) == pytest.approx((slope_y, icpt_y), abs=1e-12)


def test_blue_lines_zero_covariance():
    s = MomentSummary(3, 1.0, 1 / 3, 0.8, 0.4, 0.0)
    b = blue_lines(s)
    assert b.beta_x == 0.0 and b.beta_y == 0.0
    assert b.alpha_x == s.mean_y and b.alpha_y == s.mean_x


def test_blue_lines_degenerate():
    with pytest.raises(DegenerateVarianceError):
        blue_lines(MomentSummary(3, 0.0, 0.0, 0.0, 1.0, 0.0))


def test_blue_lines_through_mean_and_sign(rng):
    for _ in range(200):
        pts, _ = random_case(rng)
        s = S(pts)
        b = blue_lines(s)
        assert b.alpha_x + b.beta_x * s.mean_x == pytest.approx(s.mean_y, abs=1e-12 * (1 + abs(s.mean_y)))
        assert b.alpha_y + b.beta_y * s.mean_y == pytest.approx(s.mean_x, abs=1e-12 * (1 + abs(s.mean_x)))
        assert np.sign(b.beta_x) == np.sign(b.beta_y) == np.sign(s.sxy)


def test_collinear_lines_coincide(rng):
    for _ in range(50):
        slope = rng.uniform(-5, 5)
        xs = rng.uniform(-3, 3, 20)
        b = blue_lines(S(np.column_stack([xs, slope * xs + rng.uniform(-2, 2)])))
        assert b.beta_x * b.beta_y == pytest.approx(1.0, abs=1e-9)


def test_intersection_points_hand_values():
    s = S(FIXTURE_LINE)
    pts = intersection_points(blue_lines(s), s, FeasibleRegion(0, 2, 0, 1))
    assert len(pts) == 2
    assert pts[0] == pytest.approx((5 / 3, 1.0), abs=1e-12)
    assert pts[1] == pytest.approx((0.0, 0.0), abs=1e-12)


def test_intersection_points_parallel():
    s = S(FIXTURE_3)
    assert intersection_points(blue_lines(s), s, FeasibleRegion(0, 2, 0, 1)) == []


def test_intersection_points_filter():
    # steep y-on-x line leaves the narrow box through the vertical edges only
    s = S([(0, 0), (1, 10), (2, 20.5)])
    b = blue_lines(s)
    f = FeasibleRegion(0.9, 1.1, -100, 100)
    pts = intersection_points(b, s, f)
    assert all(f.contains(p) for p in pts)
    assert not any(abs(p[1]) == 100 for p in pts)


def test_intersection_exact_boundary_survives():
    s = S(FIXTURE_LINE)
    b = blue_lines(s)
    # the x-on-y line passes through (2, 4/3): a box ending exactly there keeps it
    pts = intersection_points(b, s, FeasibleRegion(0, 2, 0, 4 / 3))
    assert any(p == pytest.approx((2.0, 4 / 3), abs=1e-12) for p in pts)


def test_candidate_set_zero_covariance():
    c = candidate_set(S(FIXTURE_3), FeasibleRegion(0, 2, 0, 1))
    assert [x.label for x in c] == ["corner-ll", "corner-lu", "corner-ul", "corner-uu"]


def test_candidate_set_dedup_keeps_corner_label():
    c = candidate_set(S(FIXTURE_LINE), FeasibleRegion(0, 2, 0, 1))
    assert len(c) == 5
    assert [x.label for x in c] == ["corner-ll", "corner-lu", "corner-ul", "corner-uu", "ix-upper"]
    assert c.points[-1].point == pytest.approx((5 / 3, 1.0), abs=1e-12)


def test_candidate_set_degenerate_region():
    assert len(candidate_set(S(FIXTURE_3), FeasibleRegion(2, 2, 3, 5))) == 2
    s = S(FIXTURE_3)
    c = candidate_set(s, FeasibleRegion(s.mean_x, s.mean_x, s.mean_y, s.mean_y))
    assert len(c) == 1 and c.points[0].label == "corner-ll"


def _on_boundary(p, label, f):
    x, y = p
    return {
        "corner-ll": (x, y) == (f.lx, f.ly),
        "corner-lu": (x, y) == (f.lx, f.uy),
        "corner-ul": (x, y) == (f.ux, f.ly),
        "corner-uu": (x, y) == (f.ux, f.uy),
        "ix-lower": y == f.ly,
        "ix-upper": y == f.uy,
        "iy-left": x == f.lx,
        "iy-right": x == f.ux,
    }[label]


def test_candidates_on_boundary_and_ordered(rng):
    for _ in range(300):
        pts, f = random_case(rng)
        c = candidate_set(S(pts), f)
        assert 1 <= len(c) <= 8
        labels = [x.label for x in c]
        assert labels == sorted(labels, key=LABELS.index)
        for point, label in c:
            assert f.contains(point)
            assert _on_boundary(point, label, f)


def test_global_optimum_over_dense_grid(rng):
    for _ in range(60):
        pts, f = random_case(rng, max_n=25)
        s = S(pts)
        cand = [augmented_pcc(s, c.point) for c in candidate_set(s, f)]
        gx, gy = lattice(f, 200)
        grid = augmented_pcc_batch(pts, gx, gy)
        assert grid.max() <= max(cand) + 1e-9
        assert grid.min() >= min(cand) - 1e-9
