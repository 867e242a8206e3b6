"""Acceptance criteria, one test each; every test reports a PASS/FAIL line."""

import io
import json
import time

import numpy as np

import conftest
from conftest import rel_close
from scenarios import detour_pair, noisy_detour_pair, resampled_corridor, sparse_dense_curve
from trajsim import (dtw, edge_distances, evaluate_score, global_align,
                     global_score_linear_space, local_align, params_from_threshold,
                     select_params, semicontinuous_align, seq_align, validate_monotone)
from trajsim.cli import main
from trajsim.oracle import brute_force_best, brute_force_dtw, brute_force_seqalign
from trajsim.semicontinuous import semicontinuous_delta


def report(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    conftest.ACCEPTANCE.append((n, line))
    print(line)
    assert ok, line


def _inst(rng, lo, hi):
    m, n = rng.integers(lo, hi + 1, 2)
    return rng.uniform(0, 100, (m, 2)), rng.uniform(0, 100, (n, 2))


def test_01_global_oracle():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(200):
        P, Q = _inst(rng, 1, 5)
        p = params_from_threshold(float(rng.choice([5, 20, 60])), int(rng.integers(0, 3)))
        res = global_align(P, Q, p)
        ok = rel_close(res.score, brute_force_best(P, Q, p)[0])
        ok &= validate_monotone(P, Q, res.alpha, res.beta) is None
        ok &= rel_close(evaluate_score(P, Q, res.alpha, res.beta, p), res.score)
        bad += not ok
    dt = time.perf_counter() - t0
    report(1, bad == 0 and dt < 60, f"global DP vs brute force: {200 - bad}/200 equal, {dt:.1f} s")


def test_02_local_oracle():
    rng = np.random.default_rng(202)
    t0 = time.perf_counter()
    bad = 0
    for k in range(100):
        P, Q = _inst(rng, 1, 4)
        base = params_from_threshold(float(rng.choice([5, 20, 60])), int(rng.integers(0, 3)))
        p = base.with_tau_factor((0.0, 1.0, 1.5, 2.0)[k % 4])
        s = local_align(P, Q, p).score
        bad += not rel_close(s, max(0.0, brute_force_best(P, Q, p, "local-windowed")[0]))
    dt = time.perf_counter() - t0
    report(2, bad == 0 and dt < 60, f"local DP vs windowed brute force: {100 - bad}/100 equal, "
           f"{dt:.1f} s")


def test_03_baseline_oracles():
    rng = np.random.default_rng(303)
    bd = bs = 0
    for _ in range(100):
        P, Q = _inst(rng, 1, 5)
        p = params_from_threshold(float(rng.choice([5, 20, 60])), int(rng.integers(0, 3)))
        bd += not rel_close(dtw(P, Q).total_cost, brute_force_dtw(P, Q)[0])
        bs += not rel_close(seq_align(P, Q, p).total_cost, brute_force_seqalign(P, Q, p)[0])
    report(3, bd == 0 and bs == 0, f"DTW {100 - bd}/100, seq-align {100 - bs}/100 equal")


def test_04_detour_scenario():
    p = params_from_threshold(100, 4)
    P, Q, mask = detour_pair(400)
    res = global_align(P, Q, p)
    gap = np.mean(res.beta[mask] < 0)
    corridor = np.mean(np.r_[res.alpha[~mask] >= 0, res.beta[~mask] >= 0])
    d = dtw(P, Q)
    up, uq = d.unmatched(len(P), len(Q))
    dtw_all = not up.any() and not uq.any()
    wide = global_align(*detour_pair(800)[:2], p)
    ok = gap >= 0.9 and corridor >= 0.95 and dtw_all and res.normalized > wide.normalized
    report(4, ok, f"detour gap {gap:.0%}, corridor assigned {corridor:.0%}, DTW covers all: "
           f"{dtw_all}, normalized 400 m {res.normalized:.6f} > 800 m {wide.normalized:.6f}")


def test_05_sampling_rate():
    p = params_from_threshold(100, 4)
    P, Q = resampled_corridor()
    res = global_align(P, Q, p)
    gap = (np.sum(res.alpha < 0) + np.sum(res.beta < 0)) / (len(P) + len(Q))
    sa = seq_align(P, Q, p)
    unmatched = 1 - len({j for _, j in sa.pairs}) / len(Q)
    report(5, gap < 0.05 and unmatched >= 0.5,
           f"assignment gap points {gap:.1%}, seq-align unmatched Q {unmatched:.1%}")


def test_06_semicontinuous():
    rng = np.random.default_rng(606)
    cells = viol = 0
    while cells < 1000:
        P, Q = rng.uniform(0, 200, (6, 2)), rng.uniform(0, 200, (6, 2))
        dp, dq = semicontinuous_delta(P, Q, 25.0)
        d = 1.0 / (25.0 + ((P[:, None] - Q[None]) ** 2).sum(-1))
        viol += int(np.sum(dp[:, 1:] < d[:, 1:]) + np.sum(dq[1:, :] < d[1:, :]))
        cells += dp[:, 1:].size + dq[1:, :].size
    p = params_from_threshold(100, 4)
    P, Q = sparse_dense_curve()
    g = global_align(P, Q, p)
    gd = np.mean([e[3] for e in edge_distances(P, Q, g.alpha, g.beta)])
    sc = semicontinuous_align(P, Q, p)
    sd = np.mean([np.hypot(*(X[k] - np.array(t.point)))
                  for X, ts in ((P, sc.alpha), (Q, sc.beta))
                  for k, t in enumerate(ts) if not isinstance(t, int)])
    report(6, viol == 0 and sd < gd, f"dominance violations {viol}/{cells} cells; mean matched "
           f"distance semi-continuous {sd:.2f} m < discrete {gd:.2f} m")


def test_07_param_selection():
    sigma = 5.0
    conv = rms_ok = cov_ok = trace_ok = 0
    for seed in range(20):
        P, Q, mask = noisy_detour_pair(seed, sigma=sigma)
        tr = select_params(P, Q, 1000.0, 4, max_iters=50)
        its = tr.iterations
        conv += tr.converged and len(its) <= 50
        rms_ok += 0.5 * sigma <= its[-1].rms <= 5 * sigma
        cov_ok += np.mean(tr.results[-1].beta[mask] < 0) >= 0.8
        trace_ok += all(b.r == 2.0 * a.rms for a, b in zip(its, its[1:]))
    ok = conv >= 18 and rms_ok >= 18 and cov_ok >= 18 and trace_ok == 20
    report(7, ok, f"over 20 seeds: converged {conv}, rms in [0.5s, 5s] {rms_ok}, detour "
           f"coverage >= 80% {cov_ok}, exact trace {trace_ok}")


def test_08_symmetry_invariance():
    rng = np.random.default_rng(808)
    sym = rig = taum = acct = 0
    N = 100
    th = 0.7
    R = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    for _ in range(N):
        m, n = rng.integers(1, 16, 2)
        P, Q = rng.uniform(0, 300, (m, 2)), rng.uniform(0, 300, (n, 2))
        p = params_from_threshold(float(rng.choice([20, 60, 100])), int(rng.integers(0, 4)))
        a = global_align(P, Q, p)
        sym += rel_close(a.score, global_align(Q, P, p).score)
        shift = np.array([5e3, -2e3])
        rig += rel_close(a.score, global_align(P @ R.T + shift, Q @ R.T + shift, p).score)
        ls = [local_align(P, Q, p.with_tau_factor(f)).score for f in (0, 0.5, 1, 1.5, 2)]
        taum += all(x >= y for x, y in zip(ls, ls[1:]))
        acct += all(sum(g.length for g in a.gaps if g.side == s) + np.sum(mp >= 0) == size
                    for s, size, mp in (("P", m, a.alpha), ("Q", n, a.beta)))
    ok = sym == rig == taum == acct == N
    report(8, ok, f"swap {sym}/{N}, rigid motion {rig}/{N}, tau-monotone {taum}/{N}, "
           f"gap accounting {acct}/{N}")


def _time(n, rng, p, reps=5):
    P, Q = rng.uniform(0, 5000, (n, 2)), rng.uniform(0, 5000, (n, 2))
    best = np.inf
    for _ in range(reps):
        t0 = time.perf_counter()
        global_align(P, Q, p)
        best = min(best, time.perf_counter() - t0)
    return best


def test_09_complexity():
    rng = np.random.default_rng(909)
    p = params_from_threshold(100, 4)
    global_align([[0, 0]], [[1, 1]], p)
    ts = {n: _time(n, rng, p) for n in (500, 1000, 2000, 4000)}
    ratios = [ts[2 * n] / ts[n] for n in (500, 1000, 2000)]
    P, Q = rng.uniform(0, 5000, (5000, 2)), rng.uniform(0, 5000, (5000, 2))
    t0 = time.perf_counter()
    global_align(P, Q, p)
    big = time.perf_counter() - t0
    lin = 0
    for _ in range(100):
        m, n = rng.integers(1, 201, 2)
        A, B = rng.uniform(0, 2000, (m, 2)), rng.uniform(0, 2000, (n, 2))
        lin += global_score_linear_space(A, B, p) == global_align(A, B, p).score
    ok = all(3 <= r <= 6 for r in ratios) and big <= 60 and lin == 100
    report(9, ok, "time ratios " + ", ".join(f"{r:.2f}" for r in ratios)
           + f"; 5000x5000 in {big:.1f} s; linear-space equal {lin}/100")


def _cli(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_10_cli(tmp_path):
    P, Q, _ = detour_pair(400, n=40, start=10, length=12)
    fa, fb = tmp_path / "a.csv", tmp_path / "b.csv"
    for f, X in ((fa, P), (fb, Q)):
        f.write_text("".join(f"{float(x)!r},{float(y)!r}\n" for x, y in X))
    a, b = str(fa), str(fb)
    c1, out1 = _cli(["align", a, b])
    c2, out2 = _cli(["align", a, b])
    doc = json.loads(out1)
    p = params_from_threshold(doc["params"]["r"], doc["params"]["l"])
    al = np.array([-1 if v is None else v for v in doc["alpha"]])
    be = np.array([-1 if v is None else v for v in doc["beta"]])
    round_trip = rel_close(evaluate_score(P, Q, al, be, p), doc["score"])
    identical = c1 == c2 == 0 and out1 == out2
    for mode in ("local", "semicontinuous", "dtw", "dtw-pruned", "seqalign"):
        identical &= _cli(["align", a, b, "--mode", mode])[1] == \
            _cli(["align", a, b, "--mode", mode])[1]
    loc = json.loads(_cli(["align", a, b, "--mode", "local"])[1])["params"]
    scl = json.loads(_cli(["align", a, b, "--mode", "local", "--semicontinuous"])[1])["params"]
    defaults = (doc["params"]["r"] == 100.0 and doc["params"]["l"] == 4
                and rel_close(loc["tau"], 1.5 * loc["delta"])
                and rel_close(scl["tau"], 2.0 * scl["delta"]))
    report(10, round_trip and identical and defaults,
           f"round trip {round_trip}, byte-identical reruns {identical}, defaults "
           f"r=100 l=4 tau 1.5/2.0 {defaults}")
