"""Choosing r from the data, then looking at a small synthetic dataset.

Run with ``python demos/03_dataset.py``.
"""

# %%
import numpy as np

from trajsim import (Trajectory, all_pairs, distance_histogram, edge_distances, importance,
                     params_from_threshold, select_params)

rng = np.random.default_rng(3)

# A noisy copy of a path (sigma = 5 m) with 60 samples pushed 500 m away.
t = np.arange(200) * 20.0
P = np.column_stack([t, 30 * np.sin(t / 400)])
Q = P + rng.normal(0, 5, P.shape)
Q[70:130, 1] += 500

# %%
# Start from a generous guess and let the rms of the matched distances pull
# r down. Each row is one round.
trace = select_params(P, Q, r_hat=1000.0, l=4)
print(trace.to_csv())
print("converged:", trace.converged, " final r:", round(trace.final_r, 2), "m")

final = trace.results[-1]
print("detour points left as gaps:", int(np.sum(final.beta[70:130] < 0)), "of 60")

# %%
# Distances of the final assignment, binned on a log scale.
dists = [e[3] for e in edge_distances(P, Q, final.alpha, final.beta)]
h = distance_histogram(dists, bins=8, log_scale=True)
print(h.to_csv())

# %%
# Five commuters: everyone drives the same avenue, two of them also take a
# side street. Importance counts, per sample, how many other trips it
# matched.
base = np.column_stack([np.arange(40) * 30.0, np.zeros(40)])
trips = []
for k in range(5):
    pts = base + rng.normal(0, 4, base.shape)
    if k < 2:
        pts[25:, 1] += np.arange(15) * 40.0
    trips.append(Trajectory(f"trip{k}", pts))

params = params_from_threshold(50.0, 4)
table = all_pairs(trips, "assignment", params, workers=2)
imp = importance(trips, table, "assignment")
for tid, counts in imp.counts.items():
    print(tid, "".join(str(c) for c in counts))
