import math

import numpy as np
import pytest

from scenarios import noisy_detour_pair
from trajsim import params_from_threshold, rms_of, select_params


def test_rms_examples():
    assert rms_of([3, 4], 0) == pytest.approx(math.sqrt(12.5))
    assert rms_of([1, 1, 1, 100], 0.25) == 1.0
    assert rms_of([5], 0.5) == 5.0


def test_rms_errors():
    with pytest.raises(ValueError):
        rms_of([], 0.1)
    with pytest.raises(ValueError):
        rms_of([1.0], 1.0)


def test_identical_fixpoint():
    P = np.column_stack([np.arange(10) * 25.0, np.zeros(10)])
    tr = select_params(P, P, 500.0, 4)
    assert tr.converged and tr.iterations[0].rms == 0.0
    assert tr.final_r == 1e-6
    tr = select_params(P, P, 500.0, 4, r_min=3.0)
    assert tr.converged and tr.final_r == 3.0 and tr.reason == "r_min"


def test_r_hat_positive():
    with pytest.raises(ValueError):
        select_params([[0, 0]], [[0, 0]], 0.0, 4)


def test_trace_consistency_and_csv():
    P, Q, _ = noisy_detour_pair(3)
    tr = select_params(P, Q, 1000.0, 4)
    its = tr.iterations
    assert its[0].r == 1000.0
    for a, b in zip(its, its[1:]):
        assert b.r == 2.0 * a.rms
    assert tr.final_params == params_from_threshold(tr.final_r, 4)
    assert tr.final_r == 2.0 * its[-1].rms
    lines = tr.to_csv().splitlines()
    assert lines[0] == "iter,r,rms,score,edges" and len(lines) == len(its) + 1


def test_no_edges_reported():
    tr = select_params([[0, 0]], [[5000, 0]], 10.0, 0)
    assert not tr.converged and tr.reason == "no_edges"
    assert tr.iterations[-1].matched_edge_count == 0


def test_max_iters_halts():
    P, Q, _ = noisy_detour_pair(1)
    tr = select_params(P, Q, 1000.0, 4, max_iters=2)
    assert len(tr.iterations) == 2 and not tr.converged and tr.reason == "max_iters"


def test_assignment_criterion():
    P, Q, _ = noisy_detour_pair(2)
    a = select_params(P, Q, 1000.0, 4)
    b = select_params(P, Q, 1000.0, 4, criterion="assignment")
    assert b.converged and len(b.iterations) >= len(a.iterations)
    x, y = b.results[-1], b.results[-2]
    assert np.array_equal(x.alpha, y.alpha) and np.array_equal(x.beta, y.beta)


def test_gap_coverage_grows():
    good = 0
    for seed in range(20):
        P, Q, mask = noisy_detour_pair(seed)
        tr = select_params(P, Q, 1000.0, 4)
        first = np.mean(tr.results[0].beta[mask] < 0)
        last = np.mean(tr.results[-1].beta[mask] < 0)
        good += last >= first
    assert good >= 18
