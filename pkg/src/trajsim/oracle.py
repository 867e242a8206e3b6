"""Exhaustive reference implementations for tiny inputs.

Everything here enumerates candidate solutions explicitly and shares no code
with the dynamic programs, so the two can be checked against each other.
"""

import itertools
from functools import lru_cache

import numpy as np

from .geometry import as_points
from .scoring import GAP, UNALIGNED, gaps_of, validate_monotone

__all__ = [
    "GUARD",
    "OracleGuardError",
    "monotone_maps",
    "enumerate_monotone",
    "brute_force_best",
    "enumerate_dtw_paths",
    "enumerate_matchings",
    "brute_force_dtw",
    "brute_force_seqalign",
]

GUARD = 10 ** 7


class OracleGuardError(ValueError):
    """The instance is too large to enumerate."""


@lru_cache(maxsize=None)
def monotone_maps(length, targets):
    """All maps of ``length`` points into ``targets`` (or GAP) whose assigned
    entries are non-decreasing, as an ``(N, length)`` int array."""
    out = []

    def rec(prefix, low):
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        rec(prefix + [GAP], low)
        for t in range(low, targets):
            rec(prefix + [t], t)

    rec([], 0)
    arr = np.array(out, dtype=np.int64).reshape(len(out), length)
    arr.flags.writeable = False
    return arr


def _candidates(m, n):
    A = monotone_maps(m, n)
    B = monotone_maps(n, m)
    if len(A) * len(B) > GUARD:
        raise OracleGuardError(f"{len(A)} x {len(B)} candidate pairs exceed {GUARD}")
    return A, B


def enumerate_monotone(m, n):
    """Yield every monotone assignment ``(alpha, beta)`` for sizes ``m, n``.

    Each side is generated non-decreasing on its own; pairs are then filtered
    with :func:`trajsim.validate_monotone`.
    """
    A, B = _candidates(m, n)
    P = np.zeros((m, 2))
    Q = np.zeros((n, 2))
    for alpha in A:
        for beta in B:
            if validate_monotone(P, Q, alpha, beta) is None:
                yield alpha.copy(), beta.copy()


def _compatible(A, B):
    """Boolean ``(len(A), len(B))`` matrix: no alpha edge crosses a beta edge."""
    m = A.shape[1]
    n = B.shape[1]
    I = np.arange(m)[None, None, :, None]
    J = np.arange(n)[None, None, None, :]
    out = np.empty((len(A), len(B)), dtype=bool)
    step = max(1, 2_000_000 // max(1, len(B) * m * n))
    Bv = B[None, :, None, :]
    vb = Bv >= 0
    for s in range(0, len(A), step):
        Av = A[s:s + step, None, :, None]
        cross = (Av >= 0) & vb & (((I < Bv) & (Av > J)) | ((I > Bv) & (Av < J)))
        out[s:s + step] = ~cross.any(axis=(2, 3))
    return out


def _side_scores(X, Y, maps, c, a, ext, tau):
    """Edge + gap score of each candidate map from the points of X onto Y."""
    d2 = ((X[:, None, :] - Y[None, :, :]) ** 2).sum(axis=2)
    scores = np.empty(len(maps))
    for k, row in enumerate(maps):
        s = 0.0
        for i, j in enumerate(row):
            if j >= 0:
                s += 1.0 / (c + d2[i, j]) - tau
        for g in gaps_of(row, "-"):
            s += a + ext * g.length
        scores[k] = s
    return scores


def _best(P, Q, params, tau):
    m, n = len(P), len(Q)
    ext = params.delta - tau
    if m == 0 and n == 0:
        return 0.0, np.zeros(0, np.int64), np.zeros(0, np.int64)
    A, B = _candidates(m, n)
    sa = _side_scores(P, Q, A, params.c, params.a, ext, tau)
    sb = _side_scores(Q, P, B, params.c, params.a, ext, tau)
    total = np.where(_compatible(A, B), sa[:, None] + sb[None, :], -np.inf)
    k = int(np.argmax(total))
    ka, kb = divmod(k, len(B))
    return float(total[ka, kb]), A[ka].copy(), B[kb].copy()


def brute_force_best(P, Q, params, mode="global"):
    """Best assignment by exhaustive search.

    Parameters
    ----------
    mode : {"global", "local-windowed"}
        ``global`` maximizes the plain score over all monotone assignments.
        ``local-windowed`` takes the ``tau``-shifted optimum of every pair of
        non-empty windows ``P[i1..i2] x Q[j1..j2]`` and the empty assignment
        (score 0).

    Returns
    -------
    score : float
    alpha, beta : ndarray
        For local mode, points outside the best window are UNALIGNED.
    """
    P = as_points(P)
    Q = as_points(Q)
    if mode == "global":
        return _best(P, Q, params, 0.0)
    if mode != "local-windowed":
        raise ValueError(f"unknown mode {mode!r}")
    if params.tau is None:
        raise ValueError("local mode needs params.tau")
    m, n = len(P), len(Q)
    best = 0.0
    alpha = np.full(m, UNALIGNED, dtype=np.int64)
    beta = np.full(n, UNALIGNED, dtype=np.int64)
    for i1 in range(m):
        for i2 in range(i1, m):
            for j1 in range(n):
                for j2 in range(j1, n):
                    s, wa, wb = _best(P[i1:i2 + 1], Q[j1:j2 + 1], params, params.tau)
                    if s > best:
                        best = s
                        alpha = np.full(m, UNALIGNED, dtype=np.int64)
                        beta = np.full(n, UNALIGNED, dtype=np.int64)
                        alpha[i1:i2 + 1] = np.where(wa >= 0, wa + j1, GAP)
                        beta[j1:j2 + 1] = np.where(wb >= 0, wb + i1, GAP)
    return best, alpha, beta


def enumerate_dtw_paths(m, n):
    """Yield every warping path from ``(0, 0)`` to ``(m-1, n-1)``."""
    if m == 0 or n == 0:
        return

    def rec(path):
        i, j = path[-1]
        if (i, j) == (m - 1, n - 1):
            yield list(path)
            return
        for di, dj in ((1, 1), (1, 0), (0, 1)):
            if i + di < m and j + dj < n:
                path.append((i + di, j + dj))
                yield from rec(path)
                path.pop()

    yield from rec([(0, 0)])


def enumerate_matchings(m, n):
    """Yield every one-to-one non-crossing matching as a list of pairs."""
    for k in range(min(m, n) + 1):
        for ii in itertools.combinations(range(m), k):
            for jj in itertools.combinations(range(n), k):
                yield list(zip(ii, jj))


def brute_force_dtw(P, Q):
    """Minimum total Euclidean length over all warping paths."""
    P = as_points(P)
    Q = as_points(Q)
    best, best_path = np.inf, None
    for path in enumerate_dtw_paths(len(P), len(Q)):
        cost = sum(float(np.hypot(*(P[i] - Q[j]))) for i, j in path)
        if cost < best:
            best, best_path = cost, path
    return best, best_path


def brute_force_seqalign(P, Q, params):
    """Maximum matching score: edge scores plus ``a + delta |g|`` per run of
    unmatched points on either side."""
    P = as_points(P)
    Q = as_points(Q)
    m, n = len(P), len(Q)
    best, best_pairs = -np.inf, None
    for pairs in enumerate_matchings(m, n):
        s = sum(1.0 / (params.c + float(((P[i] - Q[j]) ** 2).sum())) for i, j in pairs)
        mp = np.zeros(m, dtype=np.int64)
        mq = np.zeros(n, dtype=np.int64)
        for i, j in pairs:
            mp[i] = 1
            mq[j] = 1
        for g in gaps_of(np.where(mp == 1, 0, GAP), "P") + gaps_of(np.where(mq == 1, 0, GAP), "Q"):
            s += params.a + params.delta * g.length
        if s > best:
            best, best_pairs = s, pairs
    return best, best_pairs
