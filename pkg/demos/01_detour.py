"""Two trips along the same street, one of which takes a detour.

Run with ``python demos/01_detour.py``.
"""

# %%
import numpy as np

from trajsim import dtw, global_align, params_from_threshold, seq_align

rng = np.random.default_rng(7)

# Both trips sample a straight road every 50 m. Q leaves it for 20 samples,
# 400 m to the side.
x = np.arange(60) * 50.0
P = np.column_stack([x, rng.uniform(-5, 5, 60)])
Q = np.column_stack([x, rng.uniform(-5, 5, 60)])
Q[20:40, 1] += 400.0

# %%
# r = 100 m: an edge beats a gap point exactly when the two points are
# closer than r. l = 4: a gap also pays a fixed opening cost of 4 gap points.
params = params_from_threshold(100.0, 4)
res = global_align(P, Q, params)

print("score       ", res.score)
print("normalized  ", res.normalized)
print("gaps        ", res.gaps)
print("Q detour gap points:", np.sum(res.beta[20:40] < 0), "of 20")

# %%
# DTW matches every point no matter how far apart they are.
d = dtw(P, Q)
far = [(i, j) for i, j in d.pairs if np.hypot(*(P[i] - Q[j])) > 100]
print("DTW pairs longer than 100 m:", len(far), "of", len(d.pairs))

# %%
# One-to-one sequence alignment has no such problem here, but it cannot
# absorb a change of sampling rate: resample Q three times as densely.
xq = np.arange(0, x[-1] + 1, 50.0 / 3)
Qd = np.column_stack([xq, rng.uniform(-5, 5, len(xq))])
sa = seq_align(P, Qd, params)
asg = global_align(P, Qd, params)
print("seq-align leaves", len(Qd) - len(sa.pairs), "of", len(Qd), "dense points unmatched")
print("assignment leaves", int(np.sum(asg.beta < 0)), "unmatched")
