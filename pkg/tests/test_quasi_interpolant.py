import numpy as np
import pytest

from modrecover.errors import InsufficientSamples
from modrecover.quasi_interpolant import QiOperator, build_qi, eval_recovered
from modrecover.signal_model import UniformGrid, paper_fn
from modrecover.unwrap import UnwrappedSamples

PROBE = np.linspace(0, 1, 1000)


def test_constant():
    f = build_qi(np.full(20, 3.5), 2)
    np.testing.assert_allclose(f(PROBE), 3.5, atol=1e-12)
    assert eval_recovered(f, 0.123) == pytest.approx(3.5)


def test_quadratic_reproduction():
    grid = UniformGrid(32)
    q = lambda x: x**2 - 0.3 * x
    f = build_qi(UnwrappedSamples(grid, q(grid.points)), 2)
    np.testing.assert_allclose(f(PROBE), q(PROBE), atol=1e-9)


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_polynomial_reproduction(rng, degree):
    grid = UniformGrid(40)
    p = np.polynomial.Polynomial(rng.normal(size=degree + 1))
    f = build_qi(p(grid.points), degree)
    np.testing.assert_allclose(f(PROBE), p(PROBE), atol=1e-8)


def test_interpolates_nodes(rng):
    grid = UniformGrid(50)
    s = rng.normal(size=50)
    f = build_qi(s, 2)
    np.testing.assert_allclose(f(grid.points), s, atol=1e-9)


def test_linear_between_nodes():
    grid = UniformGrid(10)
    f = build_qi(2 * grid.points - 1, 1)
    assert f(0.55) == pytest.approx(0.1)


def test_continuity(rng):
    grid = UniformGrid(30)
    f = build_qi(rng.normal(size=30), 3)
    eps = 1e-12
    for x in grid.points[:-1]:
        assert f(x - eps) == pytest.approx(f(x + eps), abs=1e-9)


def test_linearity(rng):
    s, t = rng.normal(size=(2, 60))
    a, b = 1.7, -0.4
    fs, ft, fab = build_qi(s, 2), build_qi(t, 2), build_qi(a * s + b * t, 2)
    np.testing.assert_allclose(fab(PROBE), a * fs(PROBE) + b * ft(PROBE), atol=1e-9)


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_locality(rng, degree):
    n = 50
    s = rng.normal(size=n)
    x = np.linspace(0, 1, 5001)
    base = build_qi(s, degree)(x)
    for j in (0, 7, 25, n - 1):
        bumped = s.copy()
        bumped[j] += 1.0
        changed = np.abs(build_qi(bumped, degree)(x) - base) > 1e-12
        xj = (j + 1) / n
        assert np.all(np.abs(x[changed] - xj) <= (degree + 2) / n + 1e-12)


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_basis_matrix_matches_evaluator(rng, degree):
    s = rng.normal(size=25)
    op = QiOperator.from_samples(s, degree)
    np.testing.assert_allclose(op.basis_matrix(PROBE) @ s, op(PROBE), atol=1e-9)


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_stability_constant(rng, degree):
    op = QiOperator.from_samples(np.zeros(100), degree)
    lam = op.lebesgue_constant()
    assert lam <= 4
    s, t = rng.normal(size=(2, 100))
    fs, ft = build_qi(s, degree), build_qi(t, degree)
    grid_x = np.linspace(0.01, 1, 4000)
    assert np.abs(fs(grid_x) - ft(grid_x)).max() <= lam * np.abs(s - t).max() + 1e-12


def test_extrapolation_constant():
    op = QiOperator.from_samples(np.zeros(30), 2)
    assert op.lebesgue_constant(include_extrapolation=True) == pytest.approx(7.0)


def test_convergence_rate():
    f = paper_fn()
    ns = np.array([100, 200, 400, 800])
    x = np.linspace(0, 1, 20001)
    errs = [np.abs(build_qi(f(UniformGrid(n).points), 2)(x) - f(x)).max() for n in ns]
    assert np.polyfit(np.log(ns), np.log(errs), 1)[0] <= -2.0


def test_insufficient_samples():
    with pytest.raises(InsufficientSamples):
        build_qi(np.zeros(2), 2)


def test_table_export(tmp_path):
    f = build_qi(np.linspace(0, 1, 10), 1)
    path = tmp_path / "f.csv"
    f.to_csv(path, resolution=11)
    lines = path.read_text().splitlines()
    assert lines[0] == "x,f_hat"
    assert len(lines) == 12
