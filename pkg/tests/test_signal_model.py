import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modrecover.signal_model import (NoiseModel, SmoothnessParams, UniformGrid, circle_component, constant,
                                     frac, holder_seminorm_estimate, linear, paper_fn, parse_function,
                                     sample_modulo)


def test_grid_points():
    g = UniformGrid(8)
    assert g.points[0] == 1 / 8
    assert g.points[-1] == 1.0
    assert np.all(np.diff(g.points) > 0)
    np.testing.assert_allclose(np.diff(g.points), 1 / 8, atol=1e-15)


@pytest.mark.parametrize("n", [0, -3, 2.5])
def test_grid_rejects_bad_size(n):
    with pytest.raises(ValueError):
        UniformGrid(n)


def test_grid_window_matches_brute_force(rng):
    for _ in range(200):
        n = int(rng.integers(5, 300))
        g = UniformGrid(n)
        x, r = rng.uniform(0, 1), rng.uniform(0.2 / n, 0.5)
        lo, hi = g.window(x, r)
        expected = np.flatnonzero(np.abs(g.points - x) <= r)
        np.testing.assert_array_equal(np.arange(lo, hi), expected)


def test_smoothness_L():
    assert SmoothnessParams(l=0, alpha=0.5, M=3.0, kappa=7.0).L == 3.0
    assert SmoothnessParams(l=0, alpha=1.0, M=3.0, kappa=7.0).L == 3.0
    p = SmoothnessParams(l=2, alpha=0.4, M=3.0, kappa=7.0)
    assert p.beta == pytest.approx(2.4)
    assert p.L == 7.0


def test_frac_is_mathematical_modulo():
    assert frac(-0.3) == pytest.approx(0.7)
    assert frac(2.25) == pytest.approx(0.25)
    assert frac(-1e-18) == 0.0  # would round to 1.0 otherwise


def test_sample_constant_no_noise():
    s = sample_modulo(constant(0.25), UniformGrid(4), NoiseModel(0.0, 0))
    np.testing.assert_array_equal(s.values, [0.25] * 4)


def test_sample_negative_constant():
    s = sample_modulo(constant(-0.3), UniformGrid(5), NoiseModel(0.0, 0))
    np.testing.assert_allclose(s.values, 0.7, atol=1e-15)


def test_paper_fn_midpoint():
    # cos(pi)^2 = 1, sin(pi)^2 = 0: f(0.5) = 4 * 0.5 + 4.7
    f = paper_fn()
    assert f(0.5) == pytest.approx(6.7)
    assert frac(f(0.5)) == pytest.approx(0.7)


def test_noise_reproducible():
    a = NoiseModel(0.12, 99).draw(50)
    b = NoiseModel(0.12, 99).draw(50)
    assert a.tobytes() == b.tobytes()
    assert not np.array_equal(a, NoiseModel(0.12, 100).draw(50))


def test_sample_modulo_is_pure(benchmark_fn):
    grid, noise = UniformGrid(64), NoiseModel(0.12, 7)
    a = sample_modulo(benchmark_fn, grid, noise).values
    b = sample_modulo(benchmark_fn, grid, noise).values
    assert a.tobytes() == b.tobytes()


@pytest.mark.parametrize("fid", ["paper_fn", "constant:-0.3", "linear:2,0", "poly:1,0,-2", "cos_k:3"])
@pytest.mark.parametrize("sigma", [0.0, 0.05, 0.12, 0.5])
def test_samples_in_unit_interval(fid, sigma):
    f = parse_function(fid)
    grid = UniformGrid(50)
    for seed in range(100):
        v = sample_modulo(f, grid, NoiseModel(sigma, seed)).values
        assert np.all((v >= 0) & (v < 1))


def test_parse_function_catalogue():
    assert parse_function("constant:0.25")(0.3) == 0.25
    assert parse_function("linear:2,1")(0.5) == pytest.approx(2.0)
    assert parse_function("poly:1,0,-2")(0.5) == pytest.approx(0.5)
    assert parse_function("cos_k:3")(1 / 3) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        parse_function("gaussian_bump")
    with pytest.raises(ValueError):
        parse_function("linear:1")


def test_holder_linear():
    assert holder_seminorm_estimate(linear(2, 0), 0, 1.0, 200) == pytest.approx(2.0, rel=1e-9)


@pytest.mark.parametrize("l,alpha", [(0, 1.0), (1, 0.5), (2, 0.4), (3, 1.0)])
def test_holder_constant_is_zero(l, alpha):
    assert holder_seminorm_estimate(constant(1.7), l, alpha, 500) == pytest.approx(0.0, abs=1e-6)


def test_holder_paper_fn_against_exact_derivative():
    # oracle: analytic second derivative, brute force over the same probe pairs
    two_pi = 2 * np.pi
    def d2(x):
        c, s = np.cos(two_pi * x), np.sin(two_pi * x)
        cos2 = c * c - s * s  # cos(4 pi x)
        # f = 2x(1 + cos 4pi x) - (1 - cos 4pi x) + 4.7
        return -16 * np.pi * np.sin(2 * two_pi * x) - 32 * np.pi**2 * x * cos2 - 16 * np.pi**2 * cos2
    h = 1 / 2000
    x = np.arange(1, 2000) * h
    d = d2(x)
    oracle = max((np.abs(d[k:] - d[:-k]) / (k * h) ** 0.4).max() for k in range(1, 201))
    est = holder_seminorm_estimate(paper_fn(), 2, 0.4, 2000)
    assert math.isfinite(est) and est > 0
    assert est == pytest.approx(oracle, rel=1e-3)


def test_holder_rejects_coarse_probe():
    with pytest.raises(ValueError):
        holder_seminorm_estimate(paper_fn(), 3, 0.5, 40)


@pytest.mark.parametrize("fid", ["paper_fn", "linear:2,0", "poly:1,0,-2", "cos_k:2"])
@pytest.mark.parametrize("part", ["real", "imag"])
def test_circle_components_have_stable_seminorm(fid, part):
    h = circle_component(parse_function(fid), part)
    vals = [holder_seminorm_estimate(h, 2, 0.4, m) for m in (250, 500, 1000, 2000, 4000)]
    assert all(math.isfinite(v) for v in vals)
    for a, b in zip(vals, vals[1:]):
        assert b <= 2 * max(a, 1e-9)


@settings(max_examples=50, deadline=None)
@given(st.floats(-1e6, 1e6, allow_nan=False))
def test_frac_range(v):
    t = frac(v)
    assert 0.0 <= t < 1.0
