"""Optimal monotone assignment between two point sequences in O(mn) time.

Eight tables are filled per cell ``(i, j)`` of the prefix grid: the
unrestricted score plus seven restricted variants describing the last point
of each prefix (gap point, or "no outgoing edge yet"). See
:mod:`trajsim._kernels` for the recurrences and :func:`backtrack` for how an
optimal assignment is read back from the recorded choices.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .geometry import EmptyTrajectoryError, as_points
from .scoring import GAP, UNALIGNED, AssignmentResult, gaps_of, normalize

__all__ = [
    "DPTables",
    "CorruptTablesError",
    "global_align",
    "global_score_linear_space",
    "dp_tables",
    "backtrack",
]

NEG = -np.inf


class CorruptTablesError(RuntimeError):
    """Backtracking hit a state that no forward pass can produce."""


@dataclass
class _Boundary:
    """Row/column 0 values and how to read them back."""

    bp: np.ndarray  # (8, n + 1): empty P prefix, Q suffix ending at j
    bq: np.ndarray  # (8, m + 1): empty Q prefix, P suffix ending at i
    kp: np.ndarray  # gap-run length chosen for a P suffix ending at i
    kq: np.ndarray
    zp: np.ndarray  # phi-table boundary picks the lone point (no gap run)
    zq: np.ndarray


def _runs(length, a, ext, local):
    """Best gap-run value and its length for suffixes ending at 1..length."""
    val = np.full(length + 1, NEG)
    arg = np.zeros(length + 1, dtype=np.int64)
    best, kbest = NEG, 0
    for k in range(1, length + 1):
        v = a + ext * k
        if not local:
            best, kbest = v, k
        elif v > best:
            best, kbest = v, k
        val[k] = best
        arg[k] = kbest
    return val, arg


def _side(length, a, ext, local, same, phi):
    """Boundary rows for one side; ``same`` is the gap table of that side."""
    b = np.full((8, length + 1), NEG)
    run, karg = _runs(length, a, ext, local)
    zero = np.zeros(length + 1, dtype=bool)
    b[K.S, 0] = 0.0
    for k in range(1, length + 1):
        b[K.S, k] = run[k]
        b[same, k] = run[k]
        if k == 1 or (local and 0.0 >= run[k - 1]):
            b[phi, k] = 0.0
            zero[k] = True
        else:
            b[phi, k] = run[k - 1]
    return b, karg, zero


def _boundary(m, n, a, ext, local):
    bp, kq, zq = _side(n, a, ext, local, K.SG, K.SF)
    bq, kp, zp = _side(m, a, ext, local, K.GS, K.FS)
    return _Boundary(bp, bq, kp, kq, zp, zq)


def _check_inputs(P, Q):
    P = np.ascontiguousarray(as_points(P), dtype=np.float64)
    Q = np.ascontiguousarray(as_points(Q), dtype=np.float64)
    if len(P) == 0 or len(Q) == 0:
        raise EmptyTrajectoryError("both trajectories need at least one point")
    return P, Q


def _forward(P, Q, params, *, local=False, semicont=False, want_prov=True,
             want_vals=False):
    m, n = len(P), len(Q)
    tau = float(params.tau or 0.0) if local else 0.0
    ext = params.delta - tau
    bd = _boundary(m, n, params.a, ext, local)
    shape = (8, m + 1, n + 1)
    prov = np.zeros(shape if want_prov else (8, 1, 1), dtype=np.uint8)
    vals = np.full(shape if want_vals else (8, 1, 1), NEG)
    final, best, bi, bj = K.assignment_forward(
        P, Q, float(params.c), float(params.a), float(ext), tau,
        semicont, local, bd.bp, bd.bq, prov, vals, want_prov, want_vals)
    return final, (best, bi, bj), bd, prov, vals


# (table, choice) -> (edge added, next table, move)
_UP, _LEFT, _SAME = 1, 2, 0
_STEPS = {
    K.S: ((None, K.GS, _SAME), (None, K.SG, _SAME), ("a", K.FS, _SAME), ("b", K.SF, _SAME)),
    K.GS: ((None, K.S, _UP), (None, K.GS, _UP), ("b", K.GF, _SAME), (None, K.GG, _SAME)),
    K.SG: ((None, K.S, _LEFT), (None, K.SG, _LEFT), ("a", K.FG, _SAME), (None, K.GG, _SAME)),
    K.GG: ((None, K.SG, _UP), (None, K.GG, _UP), (None, K.GS, _LEFT), (None, K.GG, _LEFT)),
    K.FS: ((None, K.FG, _SAME), ("b", K.SF, _UP), ("b", K.FS, _LEFT), (None, K.S, _UP)),
    K.SF: ((None, K.GF, _SAME), ("a", K.FS, _LEFT), ("a", K.SF, _UP), (None, K.S, _LEFT)),
    K.FG: ((None, K.FS, _LEFT), (None, K.FG, _LEFT), (None, K.SG, _UP)),
    K.GF: ((None, K.SF, _UP), (None, K.GF, _UP), (None, K.GS, _LEFT)),
}


def _run_start(t, end, karg, zero, gap_table, phi_table):
    """First index (1-based) of the boundary window for table ``t``."""
    if t in (K.S, gap_table):
        return end - karg[end] + 1
    if t == phi_table:
        if zero[end]:
            return end
        return end - 1 - karg[end - 1] + 1
    raise CorruptTablesError(f"table {K.TABLE_NAMES[t]} has no boundary value")


def _trace(prov, bd, end_i, end_j):
    """Walk the recorded choices back from ``(end_i, end_j)``.

    Returns ``alpha, beta`` (0-based targets, GAP elsewhere) and the 1-based
    window start ``(i1, j1)``.
    """
    m, n = prov.shape[1] - 1, prov.shape[2] - 1
    alpha = np.full(m, GAP, dtype=np.int64)
    beta = np.full(n, GAP, dtype=np.int64)
    t, i, j = K.S, end_i, end_j
    guard = 8 * (m + n + 2)
    while True:
        if i == 0:
            return alpha, beta, (1, _run_start(t, j, bd.kq, bd.zq, K.SG, K.SF))
        if j == 0:
            return alpha, beta, (_run_start(t, i, bd.kp, bd.zp, K.GS, K.FS), 1)
        guard -= 1
        if guard < 0:
            raise CorruptTablesError("backtracking does not terminate")
        code = int(prov[t, i, j])
        k = code & 3
        steps = _STEPS[t]
        if k >= len(steps):
            raise CorruptTablesError(f"invalid choice {k} in {K.TABLE_NAMES[t]}[{i},{j}]")
        edge, nt, move = steps[k]
        if edge == "a":
            alpha[i - 1] = j - 1
        elif edge == "b":
            beta[j - 1] = i - 1
        if code & K.BOUNDARY:
            if move == _UP:
                return alpha, beta, (i, _run_start(nt, j, bd.kq, bd.zq, K.SG, K.SF))
            if move == _LEFT:
                return alpha, beta, (_run_start(nt, i, bd.kp, bd.zp, K.GS, K.FS), j)
            raise CorruptTablesError("boundary flag on a same-cell choice")
        t = nt
        if move == _UP:
            i -= 1
        elif move == _LEFT:
            j -= 1


@dataclass
class DPTables:
    """Full value and choice tables of one forward pass.

    ``values[t]`` and ``choices[t]`` are ``(m + 1) x (n + 1)`` arrays for the
    table named ``TABLE_NAMES[t]``. Infeasible states hold ``-inf``.
    """

    values: np.ndarray
    choices: np.ndarray
    boundary: _Boundary
    local: bool = False
    semicontinuous: bool = False

    TABLE_NAMES = K.TABLE_NAMES

    def __getattr__(self, name):
        if name in K.TABLE_NAMES:
            return self.values[K.TABLE_NAMES.index(name)]
        raise AttributeError(name)


def dp_tables(P, Q, params, *, local=False, semicontinuous=False):
    """Run the forward pass keeping every table (``O(mn)`` memory)."""
    P, Q = _check_inputs(P, Q)
    _, _, bd, prov, vals = _forward(P, Q, params, local=local, semicont=semicontinuous,
                                    want_vals=True)
    return DPTables(vals, prov, bd, local, semicontinuous)


def backtrack(tables, P=None, Q=None, params=None):
    """Recover an optimal ``(alpha, beta)`` for the full prefixes from ``tables``."""
    if tables.choices.ndim != 3 or tables.choices.shape[1:] != tables.values.shape[1:]:
        raise CorruptTablesError("choice tables missing")
    m, n = tables.values.shape[1] - 1, tables.values.shape[2] - 1
    alpha, beta, _ = _trace(tables.choices, tables.boundary, m, n)
    return alpha, beta


def _result(P, Q, alpha, beta, score, c):
    gaps = gaps_of(alpha, "P") + gaps_of(beta, "Q")
    return AssignmentResult(alpha, beta, gaps, float(score),
                            float(normalize(score, len(P), len(Q), c)))


def global_align(P, Q, params):
    """Maximum-score monotone assignment between ``P`` and ``Q``.

    Parameters
    ----------
    P, Q : Trajectory or array_like
        Point sequences of lengths ``m, n >= 1``.
    params : ScoringParams
        ``tau`` is ignored here; see :func:`trajsim.local_align`.

    Returns
    -------
    AssignmentResult

    Notes
    -----
    Runs in ``O(mn)`` time. Values are kept for two rows only; the choice
    tables take ``8 (m + 1)(n + 1)`` bytes. Ties go to the first maximal
    argument in the fixed recurrence order, so results are deterministic.

    Examples
    --------
    >>> from trajsim import params_from_threshold
    >>> res = global_align([[0, 0]], [[0, 0]], params_from_threshold(100, 4))
    >>> round(res.score, 12), res.alpha.tolist(), res.beta.tolist()
    (0.04, [0], [0])
    """
    P, Q = _check_inputs(P, Q)
    final, _, bd, prov, _ = _forward(P, Q, params)
    alpha, beta, _ = _trace(prov, bd, len(P), len(Q))
    return _result(P, Q, alpha, beta, final, params.c)


def global_score_linear_space(P, Q, params):
    """Optimal global score using ``O(m + n)`` memory (no assignment)."""
    P, Q = _check_inputs(P, Q)
    final, _, _, _, _ = _forward(P, Q, params, want_prov=False)
    return float(final)


def _mark_unaligned(alpha, beta, start, end):
    (i1, j1), (i2, j2) = start, end
    alpha = alpha.copy()
    beta = beta.copy()
    alpha[: i1 - 1] = UNALIGNED
    alpha[i2:] = UNALIGNED
    beta[: j1 - 1] = UNALIGNED
    beta[j2:] = UNALIGNED
    return alpha, beta
