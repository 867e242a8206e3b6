"""Trajectory similarity with gap-aware asymmetric assignments."""

from .geometry import EmptyTrajectoryError, Point, Trajectory, euclidean_dist, point_segment_dist
from .io import GeoPoint, TrajectoryParseError, load_trajectory, project_geo
from .scoring import (GAP, UNALIGNED, AssignmentResult, Gap, ScoringParams, delta_score,
                      edge_distances, evaluate_score, gaps_of, normalize,
                      params_from_threshold, validate_monotone)
from .assignment import DPTables, backtrack, dp_tables, global_align, global_score_linear_space
from .local import LocalResult, local_align
from .semicontinuous import SCResult, SegmentTarget, semicontinuous_align
from .baselines import CorrespondenceSet, dtw, dtw_pruned, seq_align
from .params import ParamTrace, rms_of, select_params
from .analysis import HistogramSpec, ImportanceMap, PairTable, all_pairs, distance_histogram, importance

__version__ = "0.1.0"

__all__ = [
    "EmptyTrajectoryError", "Point", "Trajectory", "euclidean_dist", "point_segment_dist",
    "GeoPoint", "TrajectoryParseError", "load_trajectory", "project_geo",
    "GAP", "UNALIGNED", "AssignmentResult", "Gap", "ScoringParams", "delta_score",
    "edge_distances", "evaluate_score", "gaps_of", "normalize", "params_from_threshold",
    "validate_monotone",
    "DPTables", "backtrack", "dp_tables", "global_align", "global_score_linear_space",
    "LocalResult", "local_align",
    "SCResult", "SegmentTarget", "semicontinuous_align",
    "CorrespondenceSet", "dtw", "dtw_pruned", "seq_align",
    "ParamTrace", "rms_of", "select_params",
    "HistogramSpec", "ImportanceMap", "PairTable", "all_pairs", "distance_histogram", "importance",
]
