"""Iterative selection of the distance threshold ``r``."""

import csv
import io
import math
from dataclasses import dataclass, field
from typing import List, NamedTuple

import numpy as np

from .assignment import _check_inputs, global_align
from .scoring import AssignmentResult, ScoringParams, edge_distances, params_from_threshold

__all__ = ["EPS_FLOOR", "Iteration", "ParamTrace", "rms_of", "select_params"]

EPS_FLOOR = 1e-6


class Iteration(NamedTuple):
    r: float
    rms: float
    score: float
    matched_edge_count: int


@dataclass
class ParamTrace:
    """Record of one parameter-selection run.

    ``iterations[k].r`` is the threshold used in round ``k`` and
    ``iterations[k + 1].r == c1 * iterations[k].rms``. ``final_r`` is the
    threshold the loop settled on (the next ``r`` it would have used, floored
    at ``max(r_min, EPS_FLOOR)``), or the last used ``r`` when the loop
    stopped because an assignment had no edges.
    """

    iterations: List[Iteration]
    converged: bool
    final_params: ScoringParams
    reason: str
    options: dict
    results: List[AssignmentResult] = field(default_factory=list, repr=False)

    @property
    def final_r(self):
        return self.final_params.r

    def to_csv(self):
        """CSV text with columns ``iter,r,rms,score,edges``."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["iter", "r", "rms", "score", "edges"])
        for k, it in enumerate(self.iterations):
            w.writerow([k, repr(it.r), repr(it.rms), repr(it.score), it.matched_edge_count])
        return buf.getvalue()

    def as_dict(self):
        return {
            "iterations": [it._asdict() for it in self.iterations],
            "converged": self.converged,
            "reason": self.reason,
            "options": dict(self.options),
            "final_params": self.final_params.as_dict(),
        }


def rms_of(distances, discard_frac=0.1):
    """Root mean square of the smallest ``ceil((1 - discard_frac) * n)`` values.

    Examples
    --------
    >>> rms_of([1, 1, 1, 100], 0.25)
    1.0
    """
    d = np.sort(np.asarray(distances, dtype=float).ravel())
    if d.size == 0:
        raise ValueError("rms_of needs at least one distance")
    if not 0.0 <= discard_frac < 1.0:
        raise ValueError(f"discard_frac must be in [0, 1), got {discard_frac}")
    keep = max(1, math.ceil((1.0 - discard_frac) * d.size - 1e-12))
    return float(np.sqrt(np.mean(d[:keep] ** 2)))


def _same(a, b):
    return np.array_equal(a.alpha, b.alpha) and np.array_equal(a.beta, b.beta)


def select_params(P, Q, r_hat, l, *, discard_frac=0.1, c1=2.0, rel_tol=0.01, max_iters=50,
                  r_min=None, criterion="r"):
    """Refine the threshold ``r`` from a rough upper bound ``r_hat``.

    Each round aligns with ``params_from_threshold(r, l)``, takes the rms of
    all edge distances (both directions) after discarding the largest
    ``discard_frac`` of them, and moves to ``r = c1 * rms``.

    Parameters
    ----------
    r_hat : float
        Starting threshold in meters.
    l : float
        Minimum gap length, kept fixed.
    rel_tol : float
        Stop when ``|r_new - r| / r < rel_tol``.
    r_min : float, optional
        Stop as soon as ``r_new <= r_min``.
    criterion : {"r", "assignment"}
        With ``"assignment"`` the loop also requires two consecutive rounds
        to produce identical ``alpha`` and ``beta``.

    Returns
    -------
    ParamTrace
    """
    if not r_hat > 0:
        raise ValueError(f"r_hat must be positive, got {r_hat}")
    if criterion not in ("r", "assignment"):
        raise ValueError(f"unknown criterion {criterion!r}")
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    P, Q = _check_inputs(P, Q)
    options = dict(r_hat=float(r_hat), l=l, discard_frac=discard_frac, c1=c1,
                   rel_tol=rel_tol, max_iters=max_iters, r_min=r_min, criterion=criterion)
    floor = max(EPS_FLOOR, r_min or 0.0)
    r = float(r_hat)
    iterations, results = [], []
    converged, reason, final_r = False, "max_iters", None
    for _ in range(max_iters):
        res = global_align(P, Q, params_from_threshold(r, l))
        dists = [d for *_, d in edge_distances(P, Q, res.alpha, res.beta)]
        results.append(res)
        if not dists:
            iterations.append(Iteration(r, math.nan, res.score, 0))
            reason, final_r = "no_edges", r
            break
        rms = rms_of(dists, discard_frac)
        iterations.append(Iteration(r, rms, res.score, len(dists)))
        r_new = c1 * rms
        final_r = max(r_new, floor)
        if r_new <= floor:
            converged, reason = True, "r_min" if r_min is not None and r_new <= r_min else "floor"
            break
        if abs(r_new - r) / r < rel_tol:
            if criterion == "r" or (len(results) > 1 and _same(results[-1], results[-2])):
                converged, reason = True, "rel_tol"
                break
        r = r_new
    return ParamTrace(iterations, converged, params_from_threshold(final_r, l), reason,
                      options, results)
