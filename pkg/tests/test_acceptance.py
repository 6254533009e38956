"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion."""

import math
import time

import numpy as np

from modrecover.circle import lift, phase
from modrecover.cli import main
from modrecover.experiments import ExperimentSpec, run_pipeline, run_sweep, summarize
from modrecover.kernels import KERNELS
from modrecover.knn_denoiser import auto_k
from modrecover.lp_denoiser import LpConfig, lp_weights, smooth_complex
from modrecover.metrics import aligned_error, circular_moment, monte_carlo_circular_moment
from modrecover.quasi_interpolant import build_qi
from modrecover.signal_model import UniformGrid, paper_fn, parse_function
from modrecover.unwrap import unwrap


def _configs(seed=2024, count=100):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(50, 1001))
        l = int(rng.integers(0, 4))
        kernel = list(KERNELS.values())[rng.integers(0, 3)]
        b = float(np.exp(rng.uniform(np.log(3 * (l + 2) / n), np.log(0.3))))
        out.append((UniformGrid(n), float(rng.uniform(0, 1)), LpConfig(l, b, kernel)))
    return out


def _slope(x, y):
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def test_c01_weight_identities(report):
    t0 = time.perf_counter()
    worst_sum, worst_moment = 0.0, 0.0
    for grid, x, cfg in _configs():
        w = lp_weights(grid, x, cfg)
        worst_sum = max(worst_sum, abs(w.weights.sum() - 1))
        d = grid.points[w.indices] - x
        for k in range(1, cfg.order_l + 1):
            worst_moment = max(worst_moment, abs(np.dot(d**k, w.weights)) / (1e-7 * grid.n))
    elapsed = time.perf_counter() - t0
    ok = worst_sum <= 1e-8 and worst_moment <= 1 and elapsed < 10
    assert report(1, ok, f"max|sum W - 1| = {worst_sum:.2e}, worst moment / (1e-7 n) = {worst_moment:.2e}, "
                         f"{elapsed:.2f}s")


def test_c02_weight_bounds(report):
    t0 = time.perf_counter()
    ratio_max, ratio_sum, outside = 0.0, 0.0, 0
    for grid, x, cfg in _configs():
        w = lp_weights(grid, x, cfg)
        c_star = 8 * cfg.kernel.k_max / w.min_eig
        nb = grid.n * cfg.bandwidth_b
        ratio_max = max(ratio_max, np.abs(w.weights).max() / (c_star / nb))
        ratio_sum = max(ratio_sum, np.abs(w.weights).sum() / c_star)
        dense = w.dense(grid.n)
        outside += int(np.count_nonzero(dense[np.abs(grid.points - x) > cfg.bandwidth_b]))
    elapsed = time.perf_counter() - t0
    ok = ratio_max <= 1 and ratio_sum <= 1 and outside == 0 and elapsed < 10
    assert report(2, ok, f"max|W| / (C*/nb) = {ratio_max:.3f}, sum|W| / C* = {ratio_sum:.3f}, "
                         f"nonzero outside window = {outside}, {elapsed:.2f}s")


def test_c03_noiseless_exactness_chain(report):
    t0 = time.perf_counter()
    n = 2048
    grid = UniformGrid(n)
    x_dense = np.linspace(0.0, 1.0, 4001)
    cases = [("constant:0.37", 0), ("constant:0.9", 2), ("poly:0.2,0.5,-0.3", 2),
             ("poly:0.3,1.0", 1), ("poly:0.1,2.0,-1.5", 2)]
    worst_g, worst_aligned = 0.0, 0.0
    for fid, l in cases:
        f = parse_function(fid)
        truth = f(grid.points)
        # smallest admissible window, so the fit is exact for degree <= l
        raw, _ = smooth_complex(lift(np.mod(truth, 1.0)), grid, LpConfig(l, 2.5 / n))
        g = phase(raw)
        worst_g = max(worst_g, float(np.max(np.minimum(np.abs(g - np.mod(truth, 1)),
                                                       1 - np.abs(g - np.mod(truth, 1))))))
        f_hat = build_qi(unwrap(g, grid), degree=max(l, 1))
        _, amax, _ = aligned_error(f_hat(x_dense), f(x_dense))
        worst_aligned = max(worst_aligned, amax)
    elapsed = time.perf_counter() - t0
    ok = worst_g <= 1e-8 and worst_aligned <= 1e-7 and elapsed < 5
    assert report(3, ok, f"max grid error of g_hat = {worst_g:.2e}, aligned_max = {worst_aligned:.2e}, "
                         f"{elapsed:.2f}s")


def test_c04_bias_rate(report):
    t0 = time.perf_counter()
    n = 4096
    f = paper_fn()
    grid = UniformGrid(n)
    h = lift(f(grid.points))
    bandwidths = [0.008, 0.004, 0.002, 0.001]
    interior = (grid.points >= max(bandwidths)) & (grid.points <= 1 - max(bandwidths))
    errs = []
    for b in bandwidths:
        raw, _ = smooth_complex(h, grid, LpConfig(2, b))
        errs.append(float(np.abs(raw - h)[interior].max()))
    slope = _slope(bandwidths, errs)
    elapsed = time.perf_counter() - t0
    ok = slope >= 1.9 and elapsed < 30
    assert report(4, ok, f"bias {['%.2e' % e for e in errs]}, slope = {slope:.3f} (>= 1.9), {elapsed:.2f}s")


def test_c05_qi_convergence(report):
    t0 = time.perf_counter()
    f = paper_fn()
    ns = [100, 200, 400, 800]
    x = np.linspace(0.0, 1.0, 20001)
    errs = [float(np.abs(build_qi(f(UniformGrid(n).points), 2)(x) - f(x)).max()) for n in ns]
    slope = _slope(ns, errs)
    elapsed = time.perf_counter() - t0
    ok = slope <= -2.0 and elapsed < 10
    assert report(5, ok, f"sup errors {['%.2e' % e for e in errs]}, slope = {slope:.3f} (<= -2), {elapsed:.2f}s")


def test_c06_wrap_rmse_trend(report):
    t0 = time.perf_counter()
    spec = ExperimentSpec(n_list=[150, 300, 600, 1200], seeds=[0, 1, 2, 3, 4], denoisers=["lp", "knn"])
    summary = summarize(run_sweep(spec))
    means = {d: [s["wrap_rmse_mean"] for s in summary if s["denoiser"] == d] for d in ("lp", "knn")}
    decreasing = all(np.all(np.diff(v) < 0) for v in means.values())
    elapsed = time.perf_counter() - t0
    ok = decreasing and means["lp"][-1] < 0.15 and elapsed < 120
    assert report(6, ok, f"LP {np.round(means['lp'], 4).tolist()}, kNN {np.round(means['knn'], 4).tolist()}, "
                         f"{elapsed:.2f}s")


def test_c07_end_to_end_rate(report):
    t0 = time.perf_counter()
    ns = [200, 400, 800, 1600, 3200]
    spec = ExperimentSpec(n_list=ns, seeds=[0, 1, 2, 3, 4], denoisers=["lp"])
    summary = summarize(run_sweep(spec))
    means = [s["aligned_max_mean"] for s in summary]
    slope = _slope(ns, means)
    tail = _slope(ns[1:], means[1:])
    elapsed = time.perf_counter() - t0
    ok = -0.60 <= slope <= -0.25 and elapsed < 180
    assert report(7, ok, f"mean aligned_max {np.round(means, 4).tolist()}, slope = {slope:.3f} "
                         f"(target [-0.60, -0.25]; n >= 400 only: {tail:.3f}), {elapsed:.2f}s")


def test_c08_circular_moment(report):
    t0 = time.perf_counter()
    details, ok = [], True
    for sigma in (0.05, 0.12, 0.3):
        exact = circular_moment(sigma)
        mc = monte_carlo_circular_moment(sigma, draws=10**6, seed=0)
        tol = 0.5 * 10 ** (math.floor(math.log10(exact)) - 2)
        ok &= abs(mc.real - exact) < tol and abs(mc.imag) < tol
        details.append(f"sigma={sigma}: {mc.real:.6f} vs {exact:.6f}")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 5
    assert report(8, ok, "; ".join(details) + f", {elapsed:.2f}s")


def test_c09_determinism(report, tmp_path):
    t0 = time.perf_counter()
    outs = [tmp_path / "a", tmp_path / "b"]
    codes = [main(["sweep", "--out", str(o)]) for o in outs]
    same = all((outs[0] / f).read_bytes() == (outs[1] / f).read_bytes() for f in ("results.csv", "summary.csv"))
    elapsed = time.perf_counter() - t0
    ok = codes == [0, 0] and same and elapsed < 120
    assert report(9, ok, f"byte-identical results.csv and summary.csv: {same}, {elapsed:.2f}s")


def test_c10_knn_rule(report):
    t0 = time.perf_counter()
    k = auto_k(600)
    elapsed = time.perf_counter() - t0
    ok = k == 12 and elapsed < 1
    assert report(10, ok, f"auto_k(600) = {k}, {elapsed * 1e3:.2f}ms")
