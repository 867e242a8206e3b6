"""Command-line front end: ``traj align | importance | histogram | params``.

All indices in the output are 0-based. Exit codes: 1 I/O error, 2 parse
error, 3 invalid configuration.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .analysis import all_pairs, distance_histogram, importance
from .assignment import global_align
from .baselines import dtw, dtw_pruned, seq_align
from .io import GeoPoint, TrajectoryParseError, load_trajectory, read_rows
from .local import local_align
from .params import select_params
from .scoring import GAP, edge_distances, gaps_of, normalize, params_from_threshold
from .semicontinuous import segment_targets, semicontinuous_align

__all__ = ["RunConfig", "main", "build_parser", "align_document",
           "DEFAULT_R", "DEFAULT_L", "DEFAULT_TAU_FACTOR", "DEFAULT_TAU_FACTOR_SC"]

DEFAULT_R = 100.0
DEFAULT_L = 4
DEFAULT_TAU_FACTOR = 1.5
DEFAULT_TAU_FACTOR_SC = 2.0

MODES = ("global", "local", "semicontinuous", "dtw", "dtw-pruned", "seqalign")
EXIT_IO, EXIT_PARSE, EXIT_CONFIG = 1, 2, 3


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    mode: str = "global"
    r: float = DEFAULT_R
    l: float = DEFAULT_L
    tau_factor: Optional[float] = None
    semicontinuous: bool = False
    auto_params: bool = False
    r_hat: Optional[float] = None
    geo: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}")
        if not (self.r > 0 and math.isfinite(self.r)):
            raise ConfigError(f"--r must be positive, got {self.r}")
        if not self.l >= 0:
            raise ConfigError(f"--min-gap-len must be non-negative, got {self.l}")
        if self.tau_factor is not None and not self.tau_factor >= 0:
            raise ConfigError(f"--tau-factor must be non-negative, got {self.tau_factor}")
        if self.semicontinuous and self.mode != "local":
            raise ConfigError("--semicontinuous only applies to --mode local")
        if self.r_hat is not None and not self.r_hat > 0:
            raise ConfigError(f"--r-hat must be positive, got {self.r_hat}")

    @property
    def effective_tau_factor(self):
        if self.tau_factor is not None:
            return self.tau_factor
        return DEFAULT_TAU_FACTOR_SC if self.semicontinuous else DEFAULT_TAU_FACTOR


def _idx(v):
    return None if v < 0 else int(v)


def _gaps(gaps):
    return [{"side": g.side, "start": int(g.start), "len": int(g.length)} for g in gaps]


def _dists(items):
    return [{"side": s, "from": int(f), "to": int(t), "dist": float(d)} for s, f, t, d in items]


def _sc_dists(P, Q, ta, tb):
    out = []
    for side, X, targets in (("P", P, ta), ("Q", Q, tb)):
        for k, tg in enumerate(targets):
            if not isinstance(tg, int):
                d = math.hypot(X[k][0] - tg.point.x, X[k][1] - tg.point.y)
                out.append((side, k, tg.edge_index, d))
    return out


def _sc_target(tg):
    return None if isinstance(tg, int) else {"edge": tg.edge_index, "t": tg.t}


def _pair_gaps(res, m, n):
    up, uq = res.unmatched(m, n)
    return gaps_of(np.where(up, GAP, 0), "P") + gaps_of(np.where(uq, GAP, 0), "Q")


def align_document(P, Q, cfg):
    """The JSON-ready dict emitted by ``traj align``."""
    doc = {"mode": cfg.mode}
    trace = None
    r = cfg.r
    if cfg.auto_params:
        trace = select_params(P, Q, cfg.r_hat if cfg.r_hat is not None else cfg.r, cfg.l)
        r = trace.final_r
    params = params_from_threshold(r, cfg.l)
    if cfg.mode == "local":
        params = params.with_tau_factor(cfg.effective_tau_factor)
        doc["semicontinuous"] = cfg.semicontinuous
    doc["params"] = params.as_dict()

    if cfg.mode in ("global", "local"):
        if cfg.mode == "global":
            res, window = global_align(P, Q, params), None
        else:
            loc = local_align(P, Q, params, semicontinuous=cfg.semicontinuous)
            res = loc.assignment
            window = None if loc.is_empty else {
                "p": [loc.start_cell[0], loc.end_cell[0]],
                "q": [loc.start_cell[1], loc.end_cell[1]]}
        doc.update(score=res.score, normalized=res.normalized,
                   alpha=[_idx(v) for v in res.alpha], beta=[_idx(v) for v in res.beta],
                   gaps=_gaps(res.gaps))
        if cfg.mode == "local":
            doc["window"] = window
        if cfg.mode == "local" and cfg.semicontinuous:
            ta, tb = segment_targets(P, Q, res.alpha, res.beta)
            doc["edge_distances"] = _dists(_sc_dists(P, Q, ta, tb))
        else:
            doc["edge_distances"] = _dists(edge_distances(P, Q, res.alpha, res.beta))
    elif cfg.mode == "semicontinuous":
        res = semicontinuous_align(P, Q, params)
        doc.update(score=res.score, normalized=res.normalized,
                   alpha=[_sc_target(t) for t in res.alpha],
                   beta=[_sc_target(t) for t in res.beta], gaps=_gaps(res.gaps),
                   edge_distances=_dists(_sc_dists(P, Q, res.alpha, res.beta)))
    else:
        m, n = len(P), len(Q)
        if cfg.mode == "dtw":
            res, norm = dtw(P, Q), None
        elif cfg.mode == "dtw-pruned":
            res, norm = dtw_pruned(P, Q, r), None
        else:
            res = seq_align(P, Q, params)
            norm = normalize(res.total_cost, m, n, params.c)
        pairs = [[int(i), int(j)] for i, j in res.pairs]
        doc.update(score=res.total_cost, normalized=norm, pairs=pairs,
                   gaps=_gaps(_pair_gaps(res, m, n)),
                   edge_distances=[{"side": "PQ", "from": i, "to": j, "dist": d}
                                   for (i, j), d in zip(pairs, res.distances(P, Q))])
    if trace is not None:
        doc["param_trace"] = trace.as_dict()
    return doc


def _dump(obj):
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def _load_pair(a, b, geo):
    if not geo:
        return load_trajectory(a), load_trajectory(b)
    _, lat, lon = read_rows(a)
    origin = GeoPoint(float(lat[0]), float(lon[0]))
    return (load_trajectory(a, "csv-geo", origin=origin),
            load_trajectory(b, "csv-geo", origin=origin))


def _cmd_align(ns, out):
    cfg = RunConfig(mode=ns.mode, r=ns.r, l=ns.min_gap_len, tau_factor=ns.tau_factor,
                    semicontinuous=ns.semicontinuous, auto_params=ns.auto_params,
                    r_hat=ns.r_hat, geo=ns.geo)
    P, Q = _load_pair(ns.a, ns.b, cfg.geo)
    out.write(_dump(align_document(P, Q, cfg)))


def _expand(paths):
    files = []
    for p in map(Path, paths):
        if p.is_dir():
            files.extend(sorted(p.glob("*.csv")))
        else:
            files.append(p)
    return files


def _cmd_importance(ns, out):
    RunConfig(r=ns.r, l=ns.min_gap_len)
    files = _expand(ns.paths)
    if len(files) < 2:
        raise ConfigError("importance needs at least two trajectories")
    if ns.geo:
        _, lat, lon = read_rows(files[0])
        origin = GeoPoint(float(lat[0]), float(lon[0]))
        trajs = [load_trajectory(f, "csv-geo", origin=origin) for f in files]
    else:
        trajs = [load_trajectory(f) for f in files]
    if len({t.id for t in trajs}) != len(trajs):
        raise ConfigError("trajectory file names must be unique")
    params = params_from_threshold(ns.r, ns.min_gap_len)
    table = all_pairs(trajs, ns.algorithm, params, workers=ns.workers)
    out.write(importance(trajs, table, ns.algorithm).to_csv())


def _cmd_histogram(ns, out):
    if ns.bins < 1:
        raise ConfigError("--bins must be at least 1")
    with open(ns.json, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
        dists = [float(e["dist"]) for e in doc["edge_distances"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise TrajectoryParseError(f"malformed alignment JSON: {exc}", ns.json) from None
    if not dists:
        raise ConfigError("alignment has no edges to histogram")
    out.write(distance_histogram(dists, ns.bins, ns.log).to_csv())


def _cmd_params(ns, out):
    RunConfig(l=ns.min_gap_len, r_hat=ns.r_hat)
    P, Q = _load_pair(ns.a, ns.b, ns.geo)
    trace = select_params(P, Q, ns.r_hat, ns.min_gap_len, discard_frac=ns.discard_frac,
                          c1=ns.c1, rel_tol=ns.rel_tol, max_iters=ns.max_iters,
                          r_min=ns.r_min)
    out.write(_dump(trace.as_dict()))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="traj", description="Trajectory similarity via gap-aware assignments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("align", help="align two trajectory files, JSON on stdout")
    a.add_argument("a")
    a.add_argument("b")
    a.add_argument("--mode", choices=MODES, default="global")
    a.add_argument("--r", type=float, default=DEFAULT_R, help="distance threshold, meters")
    a.add_argument("--min-gap-len", type=int, default=DEFAULT_L)
    a.add_argument("--tau-factor", type=float, default=None,
                   help="local mode: tau as a multiple of delta (1.5, or 2.0 with --semicontinuous)")
    a.add_argument("--semicontinuous", action="store_true",
                   help="local mode: score edges against the preceding segment")
    a.add_argument("--auto-params", action="store_true")
    a.add_argument("--r-hat", type=float, default=None,
                   help="starting threshold for --auto-params (default: --r)")
    a.add_argument("--geo", action="store_true", help="inputs are lat,lon")
    a.set_defaults(func=_cmd_align)

    i = sub.add_parser("importance", help="per-point importance CSV over a dataset")
    i.add_argument("paths", nargs="+", help="CSV files or directories of them")
    i.add_argument("--algorithm", choices=("assignment", "dtw", "dtw-pruned"), required=True)
    i.add_argument("--r", type=float, default=DEFAULT_R)
    i.add_argument("--min-gap-len", type=int, default=DEFAULT_L)
    i.add_argument("--geo", action="store_true")
    i.add_argument("--workers", type=int, default=1)
    i.set_defaults(func=_cmd_importance)

    h = sub.add_parser("histogram", help="histogram CSV of edge distances in an align JSON")
    h.add_argument("json")
    h.add_argument("--bins", type=int, default=20)
    h.add_argument("--log", action="store_true")
    h.set_defaults(func=_cmd_histogram)

    s = sub.add_parser("params", help="iterative threshold selection, JSON on stdout")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--r-hat", type=float, required=True)
    s.add_argument("--min-gap-len", type=int, default=DEFAULT_L)
    s.add_argument("--discard-frac", type=float, default=0.1)
    s.add_argument("--c1", type=float, default=2.0)
    s.add_argument("--rel-tol", type=float, default=0.01)
    s.add_argument("--max-iters", type=int, default=50)
    s.add_argument("--r-min", type=float, default=None)
    s.add_argument("--geo", action="store_true")
    s.set_defaults(func=_cmd_params)
    return p


def main(argv=None, out=None):
    """Run the CLI; returns the exit code."""
    out = sys.stdout if out is None else out
    ns = build_parser().parse_args(argv)
    try:
        ns.func(ns, out)
    except TrajectoryParseError as exc:
        print(f"traj: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"traj: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, ValueError) as exc:
        print(f"traj: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return 0


if __name__ == "__main__":
    sys.exit(main())
