"""Planar points, trajectories and the two distance primitives used everywhere."""

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

__all__ = [
    "Point",
    "Trajectory",
    "EmptyTrajectoryError",
    "as_points",
    "euclidean_dist",
    "point_segment_dist",
]


class EmptyTrajectoryError(ValueError):
    """Raised when an operation needs at least one sample point."""


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Trajectory:
    """An ordered, immutable sequence of planar sample points (meters).

    Parameters
    ----------
    id : str
        Label used in dataset-level outputs.
    points : array_like
        ``(k, 2)`` coordinates. Copied and frozen on construction.
    times : array_like, optional
        Per-point timestamps in seconds. Carried along, never used for scoring.
    """

    id: str
    points: np.ndarray
    times: Optional[np.ndarray] = field(default=None, compare=False)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1, 2)
        if not np.all(np.isfinite(pts)):
            raise ValueError(f"trajectory {self.id!r} has non-finite coordinates")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        if self.times is not None:
            t = np.array(self.times, dtype=float).reshape(-1)
            if len(t) != len(pts):
                raise ValueError("times and points differ in length")
            t.flags.writeable = False
            object.__setattr__(self, "times", t)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        x, y = self.points[i]
        return Point(float(x), float(y))


def as_points(traj):
    """Return ``traj`` as a float ``(k, 2)`` array (accepts a :class:`Trajectory`)."""
    if isinstance(traj, Trajectory):
        return traj.points
    pts = np.asarray(traj, dtype=float)
    if pts.size == 0:
        return pts.reshape(0, 2)
    return pts.reshape(-1, 2)


def euclidean_dist(p, q):
    """Euclidean distance between two planar points.

    Examples
    --------
    >>> euclidean_dist((0, 0), (3, 4))
    5.0
    """
    return math.hypot(p[0] - q[0], p[1] - q[1])


def point_segment_dist(p, s0, s1):
    """Closest point to ``p`` on the segment ``s0 s1``.

    Parameters
    ----------
    p, s0, s1 : sequence of float
        Planar points. ``s0`` may coincide with ``s1``.

    Returns
    -------
    dist : float
        Distance from ``p`` to the closest point.
    closest : Point
        ``s0 + t * (s1 - s0)``.
    t : float
        Segment parameter in ``[0, 1]``; 0 for a degenerate segment.

    Examples
    --------
    >>> point_segment_dist((0, 1), (-1, 0), (1, 0))
    (1.0, Point(x=0.0, y=0.0), 0.5)
    """
    vx = s1[0] - s0[0]
    vy = s1[1] - s0[1]
    wx = p[0] - s0[0]
    wy = p[1] - s0[1]
    ll = vx * vx + vy * vy
    if ll > 0.0:
        t = (wx * vx + wy * vy) / ll
        t = min(1.0, max(0.0, t))
    else:
        t = 0.0
    cx = s0[0] + t * vx
    cy = s0[1] + t * vy
    best = ((p[0] - cx) * (p[0] - cx) + (p[1] - cy) * (p[1] - cy), t, cx, cy)
    # rounding in the interpolation must never make an endpoint look closer
    for te, e in ((0.0, s0), (1.0, s1)):
        d2 = (p[0] - e[0]) * (p[0] - e[0]) + (p[1] - e[1]) * (p[1] - e[1])
        if d2 < best[0] or (d2 == best[0] and t == te):
            best = (d2, te, e[0], e[1])
    d2, t, cx, cy = best
    return math.sqrt(d2), Point(float(cx), float(cy)), float(t)
