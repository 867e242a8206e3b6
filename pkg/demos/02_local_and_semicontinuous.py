"""Finding a shared stretch, and matching against segments instead of samples.

Run with ``python demos/02_local_and_semicontinuous.py``.
"""

# %%
import numpy as np

from trajsim import (edge_distances, global_align, local_align, params_from_threshold,
                     semicontinuous_align)

# Two routes that share only their middle kilometre.
t = np.arange(0, 3000, 25.0)
P = np.column_stack([t, np.where(t < 1000, (1000 - t) * 0.8, 0.0)])
Q = np.column_stack([t, np.where(t > 2000, (t - 2000) * -0.8, 0.0)])

# %%
# Local mode subtracts tau from every term, so only stretches that are
# better than "a bit above the gap score" survive. 1.5 delta is the usual choice.
params = params_from_threshold(100.0, 4).with_tau_factor(1.5)
loc = local_align(P, Q, params)
(i1, j1), (i2, j2) = loc.start_cell, loc.end_cell
print(f"shared stretch: P[{i1}..{i2}] x={P[i1, 0]:.0f}..{P[i2, 0]:.0f} m,"
      f" Q[{j1}..{j2}]")
print("local score", loc.score)

# %%
# A sparse and a dense recording of the same curve. Discrete matching can
# only reach the sparse samples; the semi-continuous variant can land
# anywhere on the segment before the chosen sample.
s = np.arange(0, 3000, 150.0)
d = np.arange(5.0, 3000, 15.0)
curve = lambda u: np.column_stack([u, 200 * np.sin(u / 300)])
A, B = curve(s), curve(d)
p = params_from_threshold(100.0, 4)

g = global_align(A, B, p)
sc = semicontinuous_align(A, B, p)
discrete = np.mean([e[3] for e in edge_distances(A, B, g.alpha, g.beta)])
cont = np.mean([np.hypot(*(X[k] - np.array(tg.point)))
                for X, tgs in ((A, sc.alpha), (B, sc.beta))
                for k, tg in enumerate(tgs) if not isinstance(tg, int)])
print(f"mean matched distance: discrete {discrete:.1f} m, semi-continuous {cont:.1f} m")
