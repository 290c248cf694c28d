"""
Checking the engine against brute force
=======================================

"""

# %%
# The oracle re-evaluates the correlation on a lattice over the rectangle,
# using two-pass statistics on the literal augmented dataset.
import numpy as np

from pccsens import FeasibleRegion, from_dataset, primary_sensitivities, summarize
from pccsens.oracle import gradient_check, grid_sensitivities, hessian_det_at_mean, hessian_det_numeric

rng = np.random.default_rng(11)
pts = rng.normal(size=(25, 2)) @ np.array([[1.0, 0.5], [0.0, 0.7]])
# a rectangle off to one side, where the worst point lies on an edge, not a corner
region = FeasibleRegion(0.8, 2.5, 1.2, 3.3)
report = primary_sensitivities(summarize(from_dataset(pts)), region)
print("witness:", report.witness_r.label, tuple(report.witness_r.point))

# %%
# Coarse lattices can only undershoot the engine; finer ones close the gap.
for res in (5, 21, 101, 1001):
    g = grid_sensitivities(pts, region, res, engine_report=report)
    print(f"{res:4d}x{res:<4d} grid {g.grid_delta_r:.10f}  engine {report.delta_r:.10f}")

# %%
# Adding the engine's candidates to the lattice reproduces its answer exactly.
g = grid_sensitivities(pts, region, 5, extra_points=[c.point for c in report.candidates])
print("augmented lattice gap:", abs(g.grid_delta_r - report.delta_r))

# %%
# The closed-form partial derivatives against finite differences.
s = summarize(from_dataset(pts))
for name, chk in gradient_check(s, (0.3, -0.2)).items():
    print(f"{name:4s} analytic {chk.analytic:+.6e}  numeric {chk.numeric:+.6e}  rel err {chk.rel_err:.1e}")

# %%
# The mean is a saddle point: the Hessian determinant there is negative.
print("det H at mean:", hessian_det_at_mean(s), " finite differences:", hessian_det_numeric(s))
