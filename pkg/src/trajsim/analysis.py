"""Dataset-level tools: all-pairs alignment, point importance, distance histograms."""

import csv
import io
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Union

import numpy as np

from .assignment import global_align
from .baselines import CorrespondenceSet, dtw, dtw_pruned, seq_align
from .geometry import Trajectory
from .scoring import AssignmentResult, normalize

__all__ = [
    "METHODS",
    "PairResult",
    "PairTable",
    "ImportanceMap",
    "HistogramSpec",
    "all_pairs",
    "importance",
    "distance_histogram",
    "LOG_EPS",
]

METHODS = ("assignment", "dtw", "dtw-pruned", "seqalign")
LOG_EPS = 1e-3


@dataclass
class PairResult:
    i: int
    j: int
    id_a: str
    id_b: str
    result: Union[AssignmentResult, CorrespondenceSet]


@dataclass
class PairTable:
    """Results for every unordered pair ``i < j``, in lexicographic order."""

    method: str
    ids: List[str]
    sizes: List[int]
    pairs: List[PairResult]
    c: float = None

    def __len__(self):
        return len(self.pairs)

    def row(self, pr):
        m, n = self.sizes[pr.i], self.sizes[pr.j]
        res = pr.result
        if isinstance(res, AssignmentResult):
            gp = sum(1 for g in res.gaps if g.side == "P")
            return (pr.id_a, pr.id_b, res.score, res.normalized, res.edge_count, gp,
                    len(res.gaps) - gp)
        gp, gq = res.gap_counts(m, n)
        norm = normalize(res.total_cost, m, n, self.c) if self.method == "seqalign" else None
        return pr.id_a, pr.id_b, res.total_cost, norm, len(res.pairs), gp, gq

    def to_csv(self):
        """CSV text with ``idA,idB,score,normalized,edges,gapsP,gapsQ``.

        For DTW methods ``score`` is the path cost and ``normalized`` is left
        empty; ``gapsP``/``gapsQ`` count maximal runs of unmatched points.
        """
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["idA", "idB", "score", "normalized", "edges", "gapsP", "gapsQ"])
        for pr in self.pairs:
            a, b, s, nz, e, gp, gq = self.row(pr)
            w.writerow([a, b, repr(float(s)), "" if nz is None else repr(float(nz)), e, gp, gq])
        return buf.getvalue()


def _as_traj(t, k):
    return t if isinstance(t, Trajectory) else Trajectory(f"T{k}", t)


def _run(method, params, A, B):
    if method == "assignment":
        return global_align(A, B, params)
    if method == "dtw":
        return dtw(A, B)
    if method == "dtw-pruned":
        return dtw_pruned(A, B, params.r)
    return seq_align(A, B, params)


def all_pairs(trajs, method="assignment", params=None, workers=1):
    """Align every unordered pair of trajectories.

    Parameters
    ----------
    trajs : sequence of Trajectory
        At least two. Plain arrays get ids ``T0, T1, ...``.
    method : {"assignment", "dtw", "dtw-pruned", "seqalign"}
    params : ScoringParams
        Required except for ``dtw``; ``dtw-pruned`` uses ``params.r``.
    workers : int
        Threads used for the pairs. The compiled kernels release the GIL.
        Output does not depend on this value.

    Returns
    -------
    PairTable
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    trajs = [_as_traj(t, k) for k, t in enumerate(trajs)]
    if len(trajs) < 2:
        raise ValueError("all_pairs needs at least two trajectories")
    if params is None and method != "dtw":
        raise ValueError(f"method {method!r} needs params")
    index = list(itertools.combinations(range(len(trajs)), 2))

    def job(ij):
        i, j = ij
        return _run(method, params, trajs[i], trajs[j])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            out = list(ex.map(job, index))
    else:
        out = [job(ij) for ij in index]
    pairs = [PairResult(i, j, trajs[i].id, trajs[j].id, r) for (i, j), r in zip(index, out)]
    return PairTable(method, [t.id for t in trajs], [len(t) for t in trajs], pairs,
                     None if params is None else params.c)


@dataclass
class ImportanceMap:
    tag: str
    counts: Dict[str, np.ndarray]
    points: Dict[str, np.ndarray]

    def to_csv(self):
        """CSV text ``trajectory_id,point_index,x,y,count`` sorted by id, then index."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trajectory_id", "point_index", "x", "y", "count"])
        for tid in sorted(self.counts):
            pts = self.points[tid]
            for k, cnt in enumerate(self.counts[tid]):
                w.writerow([tid, k, repr(float(pts[k, 0])), repr(float(pts[k, 1])), int(cnt)])
        return buf.getvalue()


_TAG_METHOD = {"assignment": "assignment", "dtw": "dtw", "dtw-pruned": "dtw-pruned"}


def importance(trajs, table, tag):
    """Per-point correspondence counts over a dataset.

    ``assignment``: number of other trajectories the point sends an edge to.
    ``dtw-pruned``: number of other trajectories the point has a surviving
    pair with. ``dtw``: total number of DTW pairs containing the point.
    """
    if tag not in _TAG_METHOD:
        raise ValueError(f"unknown importance tag {tag!r}")
    if table.method != _TAG_METHOD[tag]:
        raise ValueError(f"tag {tag!r} does not match results computed with {table.method!r}")
    trajs = [_as_traj(t, k) for k, t in enumerate(trajs)]
    ids = [t.id for t in trajs]
    if ids != table.ids:
        raise ValueError("trajectories do not match the pairwise table")
    if len(set(ids)) != len(ids):
        raise ValueError("trajectory ids must be unique")
    k = len(trajs)
    if len(table.pairs) != k * (k - 1) // 2:
        raise ValueError("pairwise table does not cover all pairs")
    counts = [np.zeros(len(t), dtype=np.int64) for t in trajs]
    for pr in table.pairs:
        ca, cb = counts[pr.i], counts[pr.j]
        res = pr.result
        if tag == "assignment":
            ca += res.alpha >= 0
            cb += res.beta >= 0
        elif tag == "dtw":
            for a, b in res.pairs:
                ca[a] += 1
                cb[b] += 1
        else:
            up, uq = res.unmatched(len(ca), len(cb))
            ca += ~up
            cb += ~uq
    return ImportanceMap(tag, dict(zip(ids, counts)), {t.id: t.points for t in trajs})


@dataclass
class HistogramSpec:
    bins: int
    log_scale: bool
    edges: np.ndarray
    counts: np.ndarray
    mean: float
    rms: float
    mean_bin: int
    rms_bin: int

    def to_csv(self):
        """CSV text ``bin_lo,bin_hi,count,is_mean_bin,is_rms_bin`` (edges in meters)."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bin_lo", "bin_hi", "count", "is_mean_bin", "is_rms_bin"])
        for k in range(self.bins):
            w.writerow([repr(float(self.edges[k])), repr(float(self.edges[k + 1])),
                        int(self.counts[k]), int(k == self.mean_bin), int(k == self.rms_bin)])
        return buf.getvalue()


def _bin_of(x, edges):
    k = int(np.searchsorted(edges, x, side="right")) - 1
    return min(max(k, 0), len(edges) - 2)


def _range(v):
    lo, hi = float(v.min()), float(v.max())
    # numpy pads a zero-width range on both sides; start it at the value instead
    return (lo, hi) if hi > lo else (lo, lo + 1.0)


def distance_histogram(distances, bins=20, log_scale=False):
    """Equal-width histogram of distances with the mean and rms bins marked.

    Under ``log_scale`` bins are equal-width in ``log10`` and distances below
    ``LOG_EPS`` meters are clamped to it, so zeros land in the first bin.
    Edges are always reported in meters. When all distances are equal the
    bins span ``[d, d + 1]`` (one decade under ``log_scale``).

    Examples
    --------
    >>> h = distance_histogram([1, 10, 100], bins=3, log_scale=True)
    >>> h.counts.tolist()
    [1, 1, 1]
    """
    d = np.asarray(distances, dtype=float).ravel()
    if d.size == 0:
        raise ValueError("distance_histogram needs at least one distance")
    if bins < 1:
        raise ValueError("bins must be at least 1")
    if np.any(d < 0) or not np.all(np.isfinite(d)):
        raise ValueError("distances must be finite and non-negative")
    mean = float(d.mean())
    rms = float(np.sqrt(np.mean(d ** 2)))
    if log_scale:
        ld = np.log10(np.maximum(d, LOG_EPS))
        counts, ledges = np.histogram(ld, bins=bins, range=_range(ld))
        edges = 10.0 ** ledges
        mb = _bin_of(np.log10(max(mean, LOG_EPS)), ledges)
        rb = _bin_of(np.log10(max(rms, LOG_EPS)), ledges)
    else:
        counts, edges = np.histogram(d, bins=bins, range=_range(d))
        mb = _bin_of(mean, edges)
        rb = _bin_of(rms, edges)
    return HistogramSpec(bins, bool(log_scale), edges, counts, mean, rms, mb, rb)
