"""
Monitoring a stream one point at a time
=======================================

"""

# %%
# A slowly drifting correlated stream; the rectangle is fixed up front.
import numpy as np

from pccsens import FeasibleRegion, OnlineMoments, stream_step, update

rng = np.random.default_rng(3)
x = rng.normal(size=60)
y = 0.6 * x + 0.8 * rng.normal(size=60)
region = FeasibleRegion(-3.0, 3.0, -3.0, 3.0)

# %%
# Before each arrival the engine predicts the largest possible change in r;
# after it we compare with what actually happened.
state = OnlineMoments()
for p in zip(x[:3], y[:3]):
    state = update(state, p)

worst_ratio = 0.0
for i, p in enumerate(zip(x[3:], y[3:]), start=3):
    rec, state = stream_step(state, p, region)
    worst_ratio = max(worst_ratio, rec.observed_delta_r / rec.report_before.delta_r)
    if i % 10 == 0:
        print(f"row {i:2d}  predicted {rec.report_before.delta_r:.4f}  observed {rec.observed_delta_r:.4f}")

# %%
# Observed changes never exceed the prediction for points inside the rectangle.
print("largest observed / predicted:", round(worst_ratio, 4))

# %%
# A point far outside the rectangle is flagged rather than silently trusted.
rec, _ = stream_step(state, (8.0, -8.0), region)
print("outlier in region:", rec.point_in_region, " within prediction:", rec.within_prediction)
