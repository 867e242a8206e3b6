"""Comparison methods: DTW, DTW with distance pruning, and sequence alignment."""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from . import _kernels as K
from .assignment import _check_inputs
from .scoring import GAP, gaps_of

__all__ = ["CorrespondenceSet", "dtw", "dtw_pruned", "seq_align", "is_non_crossing"]


@dataclass
class CorrespondenceSet:
    """Undirected index pairs ``(i, j)`` plus their total cost or score."""

    pairs: List[Tuple[int, int]]
    total_cost: float

    def distances(self, P, Q):
        P, Q = _check_inputs(P, Q)
        return [float(np.hypot(*(P[i] - Q[j]))) for i, j in self.pairs]

    def unmatched(self, m, n):
        """Boolean masks of points on P and Q that appear in no pair."""
        up = np.ones(m, dtype=bool)
        uq = np.ones(n, dtype=bool)
        for i, j in self.pairs:
            up[i] = False
            uq[j] = False
        return up, uq

    def gap_counts(self, m, n):
        up, uq = self.unmatched(m, n)
        return (len(gaps_of(np.where(up, GAP, 0), "P")),
                len(gaps_of(np.where(uq, GAP, 0), "Q")))


def is_non_crossing(pairs):
    """True when no two pairs ``(i, j), (k, l)`` have ``i < k`` and ``j > l``."""
    srt = sorted(pairs)
    return all(b[1] >= a[1] for a, b in zip(srt, srt[1:]))


def dtw(P, Q):
    """Dynamic time warping with Euclidean edge lengths.

    Every point of both sequences ends up in at least one pair. Ties while
    tracing back prefer the diagonal, then ``(i-1, j)``, then ``(i, j-1)``.

    Examples
    --------
    >>> dtw([[0, 0]], [[3, 4]])
    CorrespondenceSet(pairs=[(0, 0)], total_cost=5.0)
    """
    P, Q = _check_inputs(P, Q)
    D = K.dtw_forward(P, Q)
    i, j = len(P), len(Q)
    pairs = [(i - 1, j - 1)]
    while (i, j) != (1, 1):
        diag, up, left = D[i - 1, j - 1], D[i - 1, j], D[i, j - 1]
        if diag <= up and diag <= left:
            i, j = i - 1, j - 1
        elif up <= left:
            i -= 1
        else:
            j -= 1
        pairs.append((i - 1, j - 1))
    pairs.reverse()
    return CorrespondenceSet(pairs, float(D[-1, -1]))


def dtw_pruned(P, Q, r):
    """DTW pairs longer than ``r`` dropped; cost summed over the survivors."""
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    P, Q = _check_inputs(P, Q)
    full = dtw(P, Q)
    kept, cost = [], 0.0
    for (i, j), d in zip(full.pairs, full.distances(P, Q)):
        if d <= r:
            kept.append((i, j))
            cost += d
    return CorrespondenceSet(kept, cost)


def seq_align(P, Q, params):
    """Best one-to-one non-crossing matching.

    A matched pair scores ``1/(c + d**2)``; each maximal run of unmatched
    points on either sequence scores ``a + delta |g|``, with the same
    parameters as the assignment model. ``total_cost`` holds the score.
    """
    P, Q = _check_inputs(P, Q)
    M, X, Y, tM, tX, tY = K.seqalign_forward(P, Q, float(params.c), float(params.a),
                                             float(params.delta))
    i, j = len(P), len(Q)
    ends = (M[i, j], X[i, j], Y[i, j])
    state = int(np.argmax(ends))
    score = float(ends[state])
    pairs = []
    while (i, j) != (0, 0) or state != 0:
        if state == 0:
            pairs.append((i - 1, j - 1))
            state = int(tM[i, j])
            i, j = i - 1, j - 1
        elif state == 1:
            state = 0 if tX[i, j] == 0 else 1
            i -= 1
        else:
            state = int(tY[i, j])
            j -= 1
    pairs.reverse()
    return CorrespondenceSet(pairs, score)
