"""Semi-continuous assignment: points map onto the segment preceding their target."""

from dataclasses import dataclass
from typing import List, NamedTuple, Union

import numpy as np

from .assignment import _check_inputs, _forward, _trace
from .geometry import Point, as_points, point_segment_dist
from .scoring import Gap, gaps_of, normalize

__all__ = [
    "SegmentTarget",
    "SCResult",
    "semicontinuous_align",
    "segment_targets",
    "semicontinuous_delta",
    "evaluate_semicontinuous",
]


class SegmentTarget(NamedTuple):
    """Closest point on segment ``(other[edge_index - 1], other[edge_index])``.

    For ``edge_index == 0`` there is no preceding segment; the target is the
    sample itself and ``t == 1``.
    """

    edge_index: int
    t: float
    point: Point


@dataclass
class SCResult:
    alpha: List[Union[SegmentTarget, int]]
    beta: List[Union[SegmentTarget, int]]
    alpha_index: np.ndarray
    beta_index: np.ndarray
    gaps: List[Gap]
    score: float
    normalized: float

    @property
    def edge_count(self):
        return int(np.count_nonzero(self.alpha_index >= 0)
                   + np.count_nonzero(self.beta_index >= 0))


def _target(p, other, j):
    if j == 0:
        q = other[0]
        d2 = (p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1])
        return SegmentTarget(0, 1.0, Point(float(q[0]), float(q[1]))), float(d2)
    _, closest, t = point_segment_dist(p, other[j - 1], other[j])
    d2 = (p[0] - closest.x) * (p[0] - closest.x) + (p[1] - closest.y) * (p[1] - closest.y)
    return SegmentTarget(int(j), t, closest), float(d2)


def segment_targets(P, Q, alpha, beta):
    """Realized targets for index assignments; GAP entries pass through."""
    P = as_points(P)
    Q = as_points(Q)
    ta = [_target(P[i], Q, j)[0] if j >= 0 else int(j) for i, j in enumerate(alpha)]
    tb = [_target(Q[j], P, i)[0] if i >= 0 else int(i) for j, i in enumerate(beta)]
    return ta, tb


def semicontinuous_delta(P, Q, c):
    """Per-cell edge scores ``(out_of_p, out_of_q)``, each ``m x n``.

    ``out_of_p[i, j]`` scores ``P[i]`` against the segment ending at
    ``Q[j]``; ``out_of_q[i, j]`` scores ``Q[j]`` against the segment ending
    at ``P[i]``.
    """
    P = as_points(P)
    Q = as_points(Q)
    m, n = len(P), len(Q)
    dp = np.empty((m, n))
    dq = np.empty((m, n))
    for i in range(m):
        for j in range(n):
            dp[i, j] = 1.0 / (c + _target(P[i], Q, j)[1])
            dq[i, j] = 1.0 / (c + _target(Q[j], P, i)[1])
    return dp, dq


def evaluate_semicontinuous(P, Q, alpha, beta, params):
    """Assignment score with distances measured to the realized segment points."""
    P = as_points(P)
    Q = as_points(Q)
    tau = params.tau or 0.0
    total = 0.0
    for i, j in enumerate(alpha):
        if j >= 0:
            total += 1.0 / (params.c + _target(P[i], Q, j)[1]) - tau
    for j, i in enumerate(beta):
        if i >= 0:
            total += 1.0 / (params.c + _target(Q[j], P, i)[1]) - tau
    ext = params.delta - tau
    for g in gaps_of(alpha, "P") + gaps_of(beta, "Q"):
        total += params.a + ext * g.length
    return total


def semicontinuous_align(P, Q, params):
    """Global assignment where each edge targets the closest point on the
    segment preceding the chosen sample of the other trajectory.

    Same dynamic program and running time as
    :func:`trajsim.global_align`; only the edge score changes. The returned
    index arrays satisfy the same non-crossing rule as discrete assignments.
    """
    P, Q = _check_inputs(P, Q)
    final, _, bd, prov, _ = _forward(P, Q, params, semicont=True)
    ai, bi, _ = _trace(prov, bd, len(P), len(Q))
    ta, tb = segment_targets(P, Q, ai, bi)
    gaps = gaps_of(ai, "P") + gaps_of(bi, "Q")
    return SCResult(ta, tb, ai, bi, gaps, float(final),
                    float(normalize(final, len(P), len(Q), params.c)))

