"""
Worst-case correlation change on a three-point dataset
======================================================

"""

# %%
# Three points with zero correlation, and a rectangle the next point must land in.
import math

from pccsens import FeasibleRegion, from_dataset, primary_sensitivities, summarize

points = [(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]
region = FeasibleRegion(lx=0.0, ux=2.0, ly=0.0, uy=1.0)

summary = summarize(from_dataset(points))
report = primary_sensitivities(summary, region)
print("r now      ", report.r_current)
print("p now      ", report.p_current)

# %%
# The largest swing in r is 1/sqrt(11), reached at a corner of the rectangle.
print("delta_r    ", report.delta_r, "vs", 1 / math.sqrt(11))
print("witness    ", report.witness_r.label, report.witness_r.point)

# %%
# Every candidate the engine looked at, with the correlation it would produce.
for c in report.candidates:
    print(f"{c.label:10s} ({c.point.x:4.1f}, {c.point.y:4.1f})  r'={c.r_aug:+.6f}  p'={c.p_aug:.6f}")

# %%
# The candidates span r = 0, so some point in the rectangle leaves r at zero and p at one.
print("straddle   ", report.straddle, " delta_p", report.delta_p)
