import numpy as np
import pytest

from conftest import random_instance, rel_close
from trajsim import (UNALIGNED, evaluate_score, global_align, local_align,
                     params_from_threshold, validate_monotone)
from trajsim.oracle import brute_force_best


def _window_maps(res):
    """Window-relative alpha/beta of a local result."""
    sp, sq = res.window
    a = res.assignment.alpha[sp].copy()
    b = res.assignment.beta[sq].copy()
    a[a >= 0] -= sq.start
    b[b >= 0] -= sp.start
    return a, b


def _window_score(P, Q, res, p):
    sp, sq = res.window
    return evaluate_score(P[sp], Q[sq], *_window_maps(res), p)


def test_far_inputs_zero():
    P = np.column_stack([np.arange(5) * 10.0, np.zeros(5)])
    Q = P + [0, 1000]
    p = params_from_threshold(100, 10).with_tau_factor(1.5)
    res = local_align(P, Q, p)
    assert res.score == 0.0 and res.is_empty
    assert np.all(res.assignment.alpha == UNALIGNED) and np.all(res.assignment.beta == UNALIGNED)


def test_identical_points_full():
    m = 4
    P = np.column_stack([np.arange(m) * 500.0, np.zeros(m)])
    p = params_from_threshold(100, 4).with_tau(0.01)
    res = local_align(P, P, p)
    assert res.score == pytest.approx(2 * m * (1 / 50 - 0.01))
    assert res.assignment.alpha.tolist() == list(range(m))
    assert res.start_cell == (0, 0) and res.end_cell == (m - 1, m - 1)


def test_needs_tau():
    with pytest.raises(ValueError):
        local_align([[0, 0]], [[0, 0]], params_from_threshold(100, 4))


@pytest.mark.parametrize("factor", [0.0, 1.0, 1.5, 2.0])
def test_windowed_oracle(factor):
    rng = np.random.default_rng(int(factor * 10))
    for _ in range(20):
        P, Q = random_instance(rng, 4, 4)
        p = params_from_threshold(float(rng.choice([5, 20, 60])),
                                  int(rng.integers(0, 3))).with_tau_factor(factor)
        res = local_align(P, Q, p)
        assert rel_close(res.score, brute_force_best(P, Q, p, mode="local-windowed")[0])
        if not res.is_empty:
            sp, sq = res.window
            assert rel_close(_window_score(P, Q, res, p), res.score)
            a, b = _window_maps(res)
            assert validate_monotone(P[sp], Q[sq], a, b) is None
            assert np.all(res.assignment.alpha[:sp.start] == UNALIGNED)
            assert np.all(res.assignment.beta[sq.stop:] == UNALIGNED)


def test_tau_monotone_and_zero_tau(rng):
    for _ in range(40):
        P, Q = random_instance(rng, 12, 12, scale=300.0)
        p = params_from_threshold(50, 2)
        scores = [local_align(P, Q, p.with_tau_factor(f)).score for f in (0, 0.5, 1, 1.5, 2)]
        assert all(a >= b - 1e-15 for a, b in zip(scores, scores[1:]))
        assert scores[0] >= max(0.0, global_align(P, Q, p).score) - 1e-12


def test_local_finds_shared_piece():
    x = np.arange(40) * 20.0
    P = np.column_stack([x, np.zeros(40)])
    Q = P.copy()
    Q[:15, 1] += 2000
    Q[30:, 1] -= 2000
    p = params_from_threshold(100, 4).with_tau_factor(1.5)
    res = local_align(P, Q, p)
    # P points just outside the shared piece still lie within r of its ends
    assert res.start_cell[1] == 15 and res.end_cell[1] == 29
    assert 10 <= res.start_cell[0] <= 15 and 29 <= res.end_cell[0] <= 34
    assert np.all(res.assignment.beta[15:30] == np.arange(15, 30))
    assert rel_close(_window_score(P, Q, res, p), res.score)
