"""Local assignment: the best-scoring pair of contiguous sub-trajectories."""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .assignment import _check_inputs, _forward, _mark_unaligned, _trace
from .scoring import UNALIGNED, AssignmentResult, gaps_of, normalize

__all__ = ["LocalResult", "local_align"]


@dataclass
class LocalResult:
    """Best local assignment.

    ``assignment.alpha`` / ``assignment.beta`` hold :data:`~trajsim.UNALIGNED`
    outside the matched window. Cells are 0-based and inclusive; both are
    ``None`` for the empty assignment (score 0).
    """

    assignment: AssignmentResult
    score: float
    start_cell: Optional[Tuple[int, int]]
    end_cell: Optional[Tuple[int, int]]
    semicontinuous: bool = False

    @property
    def is_empty(self):
        return self.end_cell is None

    @property
    def window(self):
        """``(slice over P, slice over Q)`` of the matched region."""
        if self.is_empty:
            return slice(0, 0), slice(0, 0)
        (i1, j1), (i2, j2) = self.start_cell, self.end_cell
        return slice(i1, i2 + 1), slice(j1, j2 + 1)


def local_align(P, Q, params, semicontinuous=False):
    """Highest-scoring local assignment under the ``tau``-shifted score.

    Every edge scores ``1/(c + d**2) - tau`` and every gap
    ``a + (delta - tau) |g|``; the result is the best window
    ``P[i1..i2] x Q[j1..j2]`` (or the empty one, score 0).

    Parameters
    ----------
    P, Q : Trajectory or array_like
    params : ScoringParams
        Must carry ``tau``; see :meth:`ScoringParams.with_tau_factor`.
    semicontinuous : bool
        Score edges against the preceding segment, as in
        :func:`trajsim.semicontinuous_align`.

    Returns
    -------
    LocalResult
    """
    if params.tau is None:
        raise ValueError("local_align needs params.tau")
    P, Q = _check_inputs(P, Q)
    m, n = len(P), len(Q)
    _, (best, bi, bj), bd, prov, _ = _forward(P, Q, params, local=True,
                                              semicont=semicontinuous)
    if not best > 0.0:
        alpha = np.full(m, UNALIGNED, dtype=np.int64)
        beta = np.full(n, UNALIGNED, dtype=np.int64)
        empty = AssignmentResult(alpha, beta, [], 0.0, 0.0)
        return LocalResult(empty, 0.0, None, None, semicontinuous)

    alpha, beta, start = _trace(prov, bd, bi, bj)
    alpha, beta = _mark_unaligned(alpha, beta, start, (bi, bj))
    gaps = gaps_of(alpha, "P") + gaps_of(beta, "Q")
    size = (bi - start[0] + 1) + (bj - start[1] + 1)
    res = AssignmentResult(alpha, beta, gaps, float(best),
                           float(normalize(best, size, 0, params.c)))
    return LocalResult(res, float(best), (start[0] - 1, start[1] - 1),
                       (bi - 1, bj - 1), semicontinuous)
