"""
When one new close can erase a correlation
==========================================

"""

# %%
# Five daily closes of two related instruments. The rectangle says the next
# close of each is somewhere between zero and its recent high.
from pccsens import FeasibleRegion, from_dataset, p_value, primary_sensitivities, summarize

closes = [(116.5, 21.3), (119.8, 22.9), (118.1, 20.9), (120.4, 22.0), (114.9, 21.6)]
region = FeasibleRegion(0.0, 120.4, 0.0, 22.9)
report = primary_sensitivities(summarize(from_dataset(closes)), region)
print(f"r = {report.r_current:.5f}, p = {report.p_current:.5f}")

# %%
# The candidate correlations span zero, so some feasible close drives r to 0
# and p to 1. The worst-case p change is then 1 - p.
print("straddle:", report.straddle, " witness:", report.witness_p.label)
print(f"{report.p_current:.5f} + {report.delta_p:.5f} = {report.p_current + report.delta_p:.5f}")

# %%
# The same identity for a correlation of 0.58028 on five points.
p = p_value(0.58028, 5).p
print(f"{p:.5f} + {1 - p:.5f} = {p + (1 - p):.5f}")
