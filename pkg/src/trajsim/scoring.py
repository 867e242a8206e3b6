"""Scoring parameters, edge scores, gaps and assignment evaluation.

Assignments are stored as two integer arrays. ``alpha[i]`` is the index of the
point of Q that ``P[i]`` is assigned to, ``beta[j]`` the index of the point of
P that ``Q[j]`` is assigned to. :data:`GAP` marks a gap point. Local results
additionally use :data:`UNALIGNED` for points outside the matched region.
"""

import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import numpy as np

from .geometry import as_points

__all__ = [
    "GAP",
    "UNALIGNED",
    "ScoringParams",
    "Gap",
    "AssignmentResult",
    "params_from_threshold",
    "delta_score",
    "gaps_of",
    "edge_sum",
    "gap_sum",
    "evaluate_score",
    "normalize",
    "validate_monotone",
    "edge_distances",
]

GAP = -1
UNALIGNED = -2


@dataclass(frozen=True)
class ScoringParams:
    """Parameters of the assignment score.

    ``delta`` (per gap point) and ``a`` (per gap) are derived:
    ``delta = 1 / (c + r**2)`` and ``a = -l * delta``.

    Parameters
    ----------
    c : float
        Offset in the edge score ``1 / (c + d**2)``, squared meters.
    r : float
        Distance threshold in meters.
    l : float
        Minimum gap length.
    tau : float, optional
        Per-term shift, only used by local assignment.
    """

    c: float
    r: float
    l: float
    tau: Optional[float] = None
    delta: float = field(init=False)
    a: float = field(init=False)

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ValueError(f"c must be positive, got {self.c}")
        if not (self.r > 0 and math.isfinite(self.r)):
            raise ValueError(f"r must be positive, got {self.r}")
        if not self.l >= 0:
            raise ValueError(f"l must be non-negative, got {self.l}")
        if self.tau is not None and not self.tau >= 0:
            raise ValueError(f"tau must be non-negative, got {self.tau}")
        delta = 1.0 / (self.c + self.r * self.r)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "a", -self.l * delta)

    def with_tau(self, tau):
        return ScoringParams(self.c, self.r, self.l, tau)

    def with_tau_factor(self, factor):
        """Copy with ``tau = factor * delta``."""
        return self.with_tau(factor * self.delta)

    def as_dict(self):
        d = {"a": self.a, "delta": self.delta, "c": self.c, "r": self.r, "l": self.l}
        if self.tau is not None:
            d["tau"] = self.tau
        return d


def params_from_threshold(r, l, tau=None):
    """Parameters derived from a distance threshold ``r`` and minimum gap length ``l``.

    Uses ``c = r / 2``; with these choices an edge beats a gap point exactly
    when the two points are closer than ``r``.

    Examples
    --------
    >>> p = params_from_threshold(2.0, 1)
    >>> p.c, p.delta, p.a
    (1.0, 0.2, -0.2)
    """
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    return ScoringParams(r / 2.0, r, l, tau)


def delta_score(p, q, c):
    """Edge score ``1 / (c + |p - q|**2)``."""
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return 1.0 / (c + (dx * dx + dy * dy))


class Gap(NamedTuple):
    side: str  # "P" or "Q"
    start: int
    length: int


def gaps_of(mapping, side):
    """Maximal runs of :data:`GAP` entries, in index order.

    :data:`UNALIGNED` entries are neither gap points nor assigned; they end a run.

    Examples
    --------
    >>> gaps_of([GAP, GAP, 3, GAP], "P")
    [Gap(side='P', start=0, length=2), Gap(side='P', start=3, length=1)]
    """
    out = []
    start = None
    for k, v in enumerate(mapping):
        if v == GAP:
            if start is None:
                start = k
        elif start is not None:
            out.append(Gap(side, start, k - start))
            start = None
    if start is not None:
        out.append(Gap(side, start, len(mapping) - start))
    return out


def _check_map(mapping, size, other, name):
    mapping = np.asarray(mapping, dtype=np.int64)
    if mapping.shape != (size,):
        raise ValueError(f"{name} has length {len(mapping)}, expected {size}")
    bad = (mapping != GAP) & (mapping != UNALIGNED) & ((mapping < 0) | (mapping >= other))
    if np.any(bad):
        raise ValueError(f"{name} has out-of-range entries at {np.flatnonzero(bad).tolist()}")
    return mapping


def edge_sum(P, Q, alpha, beta, params):
    """Sum of edge terms (shifted by ``tau`` when set)."""
    P = as_points(P)
    Q = as_points(Q)
    tau = params.tau or 0.0
    total = 0.0
    for i, j in enumerate(alpha):
        if j >= 0:
            total += delta_score(P[i], Q[j], params.c) - tau
    for j, i in enumerate(beta):
        if i >= 0:
            total += delta_score(Q[j], P[i], params.c) - tau
    return total


def gap_sum(alpha, beta, params):
    """Sum of gap terms ``a + (delta - tau) * |g|`` over both sides."""
    ext = params.delta - (params.tau or 0.0)
    return sum(params.a + ext * g.length
               for g in gaps_of(alpha, "P") + gaps_of(beta, "Q"))


def evaluate_score(P, Q, alpha, beta, params):
    """Score of a given assignment.

    Edge terms ``1/(c + d**2)`` for every assigned point of either trajectory,
    plus ``a + delta * |g|`` per gap. With ``params.tau`` set every edge term
    and every gap point is shifted down by ``tau``.
    """
    P = as_points(P)
    Q = as_points(Q)
    alpha = _check_map(alpha, len(P), len(Q), "alpha")
    beta = _check_map(beta, len(Q), len(P), "beta")
    return edge_sum(P, Q, alpha, beta, params) + gap_sum(alpha, beta, params)


def normalize(score, m, n, c):
    """Divide by ``(m + n) / c``, the largest score any assignment can reach."""
    if m + n <= 0:
        raise ValueError("normalize needs m + n > 0")
    return score / ((m + n) / c)


def _edges(alpha, beta):
    edges = [(i, int(j)) for i, j in enumerate(alpha) if j >= 0]
    edges += [(int(i), j) for j, i in enumerate(beta) if i >= 0]
    return edges


def validate_monotone(P, Q, alpha, beta):
    """Check that the directed edges of an assignment are pairwise non-crossing.

    Two edges with index pairs ``(i, j)`` and ``(k, l)`` cross when
    ``i < k`` and ``j > l`` or vice versa; an edge and its reverse never cross.

    Returns
    -------
    str or None
        ``None`` for a valid assignment, otherwise a description of the first
        violation found.
    """
    m, n = len(as_points(P)), len(as_points(Q))
    try:
        alpha = _check_map(alpha, m, n, "alpha")
        beta = _check_map(beta, n, m, "beta")
    except ValueError as exc:
        return str(exc)
    edges = sorted(_edges(alpha, beta))
    for (i, j), (k, l) in zip(edges, edges[1:]):
        if l < j:
            return f"edges {(i, j)} and {(k, l)} cross"
    return None


def edge_distances(P, Q, alpha, beta):
    """List of ``(side, from, to, dist)`` for every assigned point."""
    P = as_points(P)
    Q = as_points(Q)
    out = []
    for i, j in enumerate(alpha):
        if j >= 0:
            out.append(("P", i, int(j), math.hypot(*(P[i] - Q[j]))))
    for j, i in enumerate(beta):
        if i >= 0:
            out.append(("Q", j, int(i), math.hypot(*(Q[j] - P[i]))))
    return out


@dataclass
class AssignmentResult:
    """An assignment together with its gaps and score."""

    alpha: np.ndarray
    beta: np.ndarray
    gaps: List[Gap]
    score: float
    normalized: float

    @property
    def edge_count(self):
        return int(np.count_nonzero(self.alpha >= 0) + np.count_nonzero(self.beta >= 0))

    def swapped(self):
        """The same edge set seen from the other trajectory."""
        gaps = [Gap("Q" if g.side == "P" else "P", g.start, g.length) for g in self.gaps]
        gaps.sort(key=lambda g: (g.side, g.start))
        return AssignmentResult(self.beta.copy(), self.alpha.copy(), gaps,
                                self.score, self.normalized)
