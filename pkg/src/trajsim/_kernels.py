"""Compiled dynamic programs.

Table layout shared by the forward pass and the Python backtracker. Index
names follow the restriction on the last point of each prefix: ``G`` gap
point, ``F`` no outgoing edge and no score yet, ``S`` unrestricted.
"""

import numpy as np
from numba import njit

S, GS, SG, GG, FS, SF, FG, GF = range(8)
TABLE_NAMES = ("score", "gap_p", "gap_q", "gap_both",
               "phi_p", "phi_q", "phi_p_gap_q", "gap_p_phi_q")
NEG = -np.inf
BOUNDARY = 4  # provenance bit: the neighbour value came from a restart boundary


@njit(cache=True, inline="always")
def _seg_d2(px, py, ax, ay, bx, by):
    vx = bx - ax
    vy = by - ay
    wx = px - ax
    wy = py - ay
    ll = vx * vx + vy * vy
    t = 0.0
    if ll > 0.0:
        t = (wx * vx + wy * vy) / ll
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    cx = ax + t * vx
    cy = ay + t * vy
    d2 = (px - cx) * (px - cx) + (py - cy) * (py - cy)
    # never worse than either endpoint, even after rounding
    e = (px - ax) * (px - ax) + (py - ay) * (py - ay)
    if e < d2:
        d2 = e
    e = (px - bx) * (px - bx) + (py - by) * (py - by)
    if e < d2:
        d2 = e
    return d2


@njit(cache=True, inline="always")
def _pick3(v0, v1, v2):
    best = v0
    k = 0
    if v1 > best:
        best = v1
        k = 1
    if v2 > best:
        best = v2
        k = 2
    return best, k


@njit(cache=True, inline="always")
def _pick4(v0, v1, v2, v3):
    best, k = _pick3(v0, v1, v2)
    if v3 > best:
        return v3, 3
    return best, k


@njit(cache=True, nogil=True)
def assignment_forward(P, Q, c, a, ext, tau, semicont, restart, bp, bq,
                       prov, vals, want_prov, want_vals):
    """Forward pass over all eight tables, two rows at a time.

    ``bp[t, j]`` is the value of table ``t`` for an empty P-prefix ending
    before Q index ``j`` (row 0); ``bq[t, i]`` likewise for column 0. With
    ``restart`` the boundary values are offered again at every cell, which
    turns the recurrences into the local variant.

    Returns ``(score(m, n), best cell value, best i, best j)``.
    """
    m = P.shape[0]
    n = Q.shape[0]
    prev = bp.copy()
    cur = np.empty_like(bp)
    if want_vals:
        for t in range(8):
            for j in range(n + 1):
                vals[t, 0, j] = bp[t, j]
    best = NEG
    bi = 0
    bj = 0
    ga = a + ext
    for i in range(1, m + 1):
        px = P[i - 1, 0]
        py = P[i - 1, 1]
        for t in range(8):
            cur[t, 0] = bq[t, i]
        if want_vals:
            for t in range(8):
                vals[t, i, 0] = bq[t, i]
        for j in range(1, n + 1):
            qx = Q[j - 1, 0]
            qy = Q[j - 1, 1]
            if semicont:
                if j >= 2:
                    d2p = _seg_d2(px, py, Q[j - 2, 0], Q[j - 2, 1], qx, qy)
                else:
                    d2p = (px - qx) * (px - qx) + (py - qy) * (py - qy)
                if i >= 2:
                    d2q = _seg_d2(qx, qy, P[i - 2, 0], P[i - 2, 1], px, py)
                else:
                    d2q = (px - qx) * (px - qx) + (py - qy) * (py - qy)
                dP = 1.0 / (c + d2p) - tau
                dQ = 1.0 / (c + d2q) - tau
            else:
                dx = px - qx
                dy = py - qy
                dP = 1.0 / (c + (dx * dx + dy * dy)) - tau
                dQ = dP

            # neighbours (i-1, j) and (i, j-1), optionally restarted
            uS = prev[S, j]
            uGS = prev[GS, j]
            uSG = prev[SG, j]
            uGG = prev[GG, j]
            uSF = prev[SF, j]
            uGF = prev[GF, j]
            lS = cur[S, j - 1]
            lSG = cur[SG, j - 1]
            lGS = cur[GS, j - 1]
            lGG = cur[GG, j - 1]
            lFS = cur[FS, j - 1]
            lFG = cur[FG, j - 1]
            fuS = fuGS = fuSG = fuGG = fuSF = fuGF = 0
            flS = flSG = flGS = flGG = flFS = flFG = 0
            if restart:
                if bp[S, j] > uS:
                    uS = bp[S, j]
                    fuS = BOUNDARY
                if bp[GS, j] > uGS:
                    uGS = bp[GS, j]
                    fuGS = BOUNDARY
                if bp[SG, j] > uSG:
                    uSG = bp[SG, j]
                    fuSG = BOUNDARY
                if bp[GG, j] > uGG:
                    uGG = bp[GG, j]
                    fuGG = BOUNDARY
                if bp[SF, j] > uSF:
                    uSF = bp[SF, j]
                    fuSF = BOUNDARY
                if bp[GF, j] > uGF:
                    uGF = bp[GF, j]
                    fuGF = BOUNDARY
                if j >= 2:
                    if bq[S, i] > lS:
                        lS = bq[S, i]
                        flS = BOUNDARY
                    if bq[SG, i] > lSG:
                        lSG = bq[SG, i]
                        flSG = BOUNDARY
                    if bq[GS, i] > lGS:
                        lGS = bq[GS, i]
                        flGS = BOUNDARY
                    if bq[GG, i] > lGG:
                        lGG = bq[GG, i]
                        flGG = BOUNDARY
                    if bq[FS, i] > lFS:
                        lFS = bq[FS, i]
                        flFS = BOUNDARY
                    if bq[FG, i] > lFG:
                        lFG = bq[FG, i]
                        flFG = BOUNDARY

            vGG, kGG = _pick4(uSG + ga, uGG + ext, lGS + ga, lGG + ext)
            fGG = (fuSG, fuGG, flGS, flGG)[kGG]
            vGF, kGF = _pick3(uSF + ga, uGF + ext, lGS)
            fGF = (fuSF, fuGF, flGS)[kGF]
            vFG, kFG = _pick3(lFS + ga, lFG + ext, uSG)
            fFG = (flFS, flFG, fuSG)[kFG]
            vFS, kFS = _pick4(vFG, uSF + dQ, lFS + dQ, uS)
            fFS = (0, fuSF, flFS, fuS)[kFS]
            vSF, kSF = _pick4(vGF, lFS + dP, uSF + dP, lS)
            fSF = (0, flFS, fuSF, flS)[kSF]
            vGS, kGS = _pick4(uS + ga, uGS + ext, vGF + dQ, vGG)
            fGS = (fuS, fuGS, 0, 0)[kGS]
            vSG, kSG = _pick4(lS + ga, lSG + ext, vFG + dP, vGG)
            fSG = (flS, flSG, 0, 0)[kSG]
            vS, kS = _pick4(vGS, vSG, vFS + dP, vSF + dQ)

            cur[S, j] = vS
            cur[GS, j] = vGS
            cur[SG, j] = vSG
            cur[GG, j] = vGG
            cur[FS, j] = vFS
            cur[SF, j] = vSF
            cur[FG, j] = vFG
            cur[GF, j] = vGF
            if want_prov:
                prov[S, i, j] = kS
                prov[GS, i, j] = kGS | fGS
                prov[SG, i, j] = kSG | fSG
                prov[GG, i, j] = kGG | fGG
                prov[FS, i, j] = kFS | fFS
                prov[SF, i, j] = kSF | fSF
                prov[FG, i, j] = kFG | fFG
                prov[GF, i, j] = kGF | fGF
            if want_vals:
                for t in range(8):
                    vals[t, i, j] = cur[t, j]
            if vS > best:
                best = vS
                bi = i
                bj = j
        prev, cur = cur, prev
    return prev[S, n], best, bi, bj


@njit(cache=True, nogil=True)
def dtw_forward(P, Q):
    """Accumulated DTW cost table with Euclidean edge lengths."""
    m = P.shape[0]
    n = Q.shape[0]
    D = np.full((m + 1, n + 1), np.inf)
    D[0, 0] = 0.0
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            dx = P[i - 1, 0] - Q[j - 1, 0]
            dy = P[i - 1, 1] - Q[j - 1, 1]
            d = np.sqrt(dx * dx + dy * dy)
            best = D[i - 1, j - 1]
            if D[i - 1, j] < best:
                best = D[i - 1, j]
            if D[i, j - 1] < best:
                best = D[i, j - 1]
            D[i, j] = d + best
    return D


@njit(cache=True, nogil=True)
def seqalign_forward(P, Q, c, a, ext):
    """Three-state affine-gap alignment (match, P unmatched, Q unmatched).

    Between two matches the unmatched P run is taken before the unmatched Q
    run, so every matching has exactly one state path.
    """
    m = P.shape[0]
    n = Q.shape[0]
    M = np.full((m + 1, n + 1), NEG)
    X = np.full((m + 1, n + 1), NEG)
    Y = np.full((m + 1, n + 1), NEG)
    tM = np.zeros((m + 1, n + 1), dtype=np.uint8)
    tX = np.zeros((m + 1, n + 1), dtype=np.uint8)
    tY = np.zeros((m + 1, n + 1), dtype=np.uint8)
    M[0, 0] = 0.0
    ga = a + ext
    for i in range(m + 1):
        for j in range(n + 1):
            if i >= 1 and j >= 1:
                dx = P[i - 1, 0] - Q[j - 1, 0]
                dy = P[i - 1, 1] - Q[j - 1, 1]
                d = 1.0 / (c + (dx * dx + dy * dy))
                v, k = _pick3(M[i - 1, j - 1], X[i - 1, j - 1], Y[i - 1, j - 1])
                M[i, j] = v + d
                tM[i, j] = k
            if i >= 1:
                v, k = _pick3(M[i - 1, j] + ga, X[i - 1, j] + ext, NEG)
                X[i, j] = v
                tX[i, j] = k
            if j >= 1:
                v, k = _pick3(M[i, j - 1] + ga, X[i, j - 1] + ga, Y[i, j - 1] + ext)
                Y[i, j] = v
                tY[i, j] = k
    return M, X, Y, tM, tX, tY
