import numpy as np
import pytest

from conftest import random_instance, rel_close
from trajsim import (GAP, SegmentTarget, global_align, local_align, params_from_threshold,
                     semicontinuous_align, validate_monotone)
from trajsim.oracle import enumerate_monotone
from trajsim.scoring import delta_score
from trajsim.semicontinuous import evaluate_semicontinuous, semicontinuous_delta


def test_single_points_same_as_discrete():
    p = params_from_threshold(100, 4)
    for Q in ([[0, 0]], [[30, 40]], [[900, 0]]):
        a = semicontinuous_align([[0, 0]], Q, p)
        b = global_align([[0, 0]], Q, p)
        assert a.score == b.score and a.alpha_index.tolist() == b.alpha.tolist()


def test_perpendicular_foot():
    P = [[0, 5]]
    Q = [[-10, 0], [10, 0]]
    dp, dq = semicontinuous_delta(P, Q, 50.0)
    assert dp[0, 1] == pytest.approx(1 / 75)
    assert dp[0, 1] > delta_score((0, 5), (10, 0), 50.0)
    assert dp[0, 0] == pytest.approx(1 / 175)


def test_dominance_cells(rng):
    for _ in range(100):
        P, Q = random_instance(rng, 6, 6)
        dp, dq = semicontinuous_delta(P, Q, 10.0)
        d = 1.0 / (10.0 + ((P[:, None] - Q[None]) ** 2).sum(-1))
        assert np.all(dp[:, 1:] >= d[:, 1:])
        assert np.all(dq[1:, :] >= d[1:, :])
        assert np.array_equal(dp[:, 0], d[:, 0])


def test_exhaustive_small(rng):
    for _ in range(60):
        P, Q = random_instance(rng, 3, 3)
        p = params_from_threshold(float(rng.choice([5, 20, 60])), int(rng.integers(0, 3)))
        best = max(evaluate_semicontinuous(P, Q, a, b, p)
                   for a, b in enumerate_monotone(len(P), len(Q)))
        res = semicontinuous_align(P, Q, p)
        assert rel_close(res.score, best)


def test_targets_and_reevaluation(rng):
    for _ in range(50):
        P, Q = random_instance(rng, 15, 15, scale=400.0)
        p = params_from_threshold(80, 2)
        res = semicontinuous_align(P, Q, p)
        assert validate_monotone(P, Q, res.alpha_index, res.beta_index) is None
        assert rel_close(evaluate_semicontinuous(P, Q, res.alpha_index, res.beta_index, p),
                         res.score)
        for k, tg in enumerate(res.alpha):
            if isinstance(tg, SegmentTarget):
                j = tg.edge_index
                assert j == res.alpha_index[k] and 0 <= tg.t <= 1
                if j > 0:
                    assert np.allclose(tg.point, Q[j - 1] + tg.t * (Q[j] - Q[j - 1]))
            else:
                assert tg == GAP


def test_local_semicontinuous_oracle(rng):
    for _ in range(20):
        P, Q = random_instance(rng, 2, 3)
        p = params_from_threshold(30, 1).with_tau_factor(2.0)
        res = local_align(P, Q, p, semicontinuous=True)
        assert res.score >= 0.0
        assert res.score >= local_align(P, Q, p).score - 1e-12
