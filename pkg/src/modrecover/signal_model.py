"""Ground-truth functions, uniform grids and noisy modulo-1 observations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "UniformGrid",
    "SmoothnessParams",
    "TestFunction",
    "NoiseModel",
    "ModuloSamples",
    "frac",
    "paper_fn",
    "constant",
    "linear",
    "poly",
    "cos_k",
    "circle_component",
    "parse_function",
    "sample_modulo",
    "holder_seminorm_estimate",
]


def frac(values):
    """Fractional part in [0, 1), nonnegative for negative inputs."""
    out = np.mod(values, 1.0)
    # np.mod(-1e-17, 1.0) rounds to 1.0
    out = np.where(out >= 1.0, 0.0, out)
    if np.ndim(out) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class UniformGrid:
    """Sample locations ``x_i = i/n`` for ``i = 1..n``."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"grid size must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def points(self) -> np.ndarray:
        return np.arange(1, self.n + 1, dtype=float) / self.n

    @property
    def spacing(self) -> float:
        return 1.0 / self.n

    def window(self, x: float, radius: float) -> tuple[int, int]:
        """Half-open 0-based index range of points with ``|x_i - x| <= radius``.

        Computed arithmetically; a relative slack of 1e-12 keeps points that
        sit exactly on the window edge despite rounding in ``i/n``.
        """
        slack = 1e-12 * max(1.0, abs(radius))
        lo = math.ceil((x - radius - slack) * self.n)
        hi = math.floor((x + radius + slack) * self.n)
        lo = max(lo, 1)
        hi = min(hi, self.n)
        if hi < lo:
            return 0, 0
        return lo - 1, hi


@dataclass(frozen=True)
class SmoothnessParams:
    """Hölder class parameters: ``l`` derivatives, exponent ``alpha``, constants ``M`` and ``kappa``."""

    l: int = 2
    alpha: float = 0.4
    M: float = 1.0
    kappa: float = 1.0

    def __post_init__(self):
        if self.l < 0:
            raise ValueError("l must be nonnegative")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")
        if self.M <= 0 or self.kappa <= 0:
            raise ValueError("M and kappa must be positive")

    @property
    def beta(self) -> float:
        return self.l + self.alpha

    @property
    def L(self) -> float:
        """Constant in ``|f(x) - f(y)| <= L |x - y|^min(beta, 1)``."""
        return self.M if self.beta <= 1 else self.kappa


@dataclass(frozen=True)
class TestFunction:
    """A named ground-truth function on [0, 1]."""

    __test__ = False  # not a pytest class

    id: str
    evaluator: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    smoothness: SmoothnessParams = field(default_factory=SmoothnessParams)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.asarray(self.evaluator(x), dtype=float)
        return np.broadcast_to(out, x.shape).copy() if out.shape != x.shape else out


def _paper_fn(x):
    c = np.cos(2 * np.pi * x)
    s = np.sin(2 * np.pi * x)
    return 4 * x * c**2 - 2 * s**2 + 4.7


def paper_fn() -> TestFunction:
    """``4x cos(2 pi x)^2 - 2 sin(2 pi x)^2 + 4.7``, the benchmark function.

    The function is smooth, so any (l, alpha) is admissible; the default
    smoothness mirrors the benchmark setting l = 2, beta = 2.4. ``M`` and
    ``kappa`` are rough finite-difference witnesses, not proven constants.
    """
    return TestFunction("paper_fn", _paper_fn, SmoothnessParams(l=2, alpha=0.4, M=2.0e3, kappa=8.0e2))


def constant(c: float) -> TestFunction:
    c = float(c)
    return TestFunction(f"constant:{c:g}", lambda x: np.full(np.shape(x), c),
                        SmoothnessParams(l=2, alpha=1.0, M=1e-12, kappa=max(abs(c), 1e-12)))


def linear(a: float, b: float) -> TestFunction:
    a, b = float(a), float(b)
    return TestFunction(f"linear:{a:g},{b:g}", lambda x: a * x + b,
                        SmoothnessParams(l=0, alpha=1.0, M=max(abs(a), 1e-12),
                                         kappa=max(abs(a), abs(b), 1e-12)))


def poly(coeffs) -> TestFunction:
    """Polynomial with coefficients in increasing degree order: ``c0 + c1 x + ...``."""
    coeffs = tuple(float(c) for c in coeffs)
    if not coeffs:
        raise ValueError("poly needs at least one coefficient")
    p = np.polynomial.Polynomial(coeffs)
    deg = len(coeffs) - 1
    bound = max(1e-12, max(np.abs(p.deriv(k).coef).sum() for k in range(deg + 1)))
    return TestFunction("poly:" + ",".join(f"{c:g}" for c in coeffs), p,
                        SmoothnessParams(l=max(deg - 1, 0), alpha=1.0, M=bound, kappa=bound))


def cos_k(k: int) -> TestFunction:
    k = int(k)
    w = 2 * np.pi * k
    return TestFunction(f"cos_k:{k}", lambda x: np.cos(w * x),
                        SmoothnessParams(l=2, alpha=1.0, M=max(w**3, 1e-12), kappa=max(w**2, 1.0)))


def circle_component(f: TestFunction, part: str = "real") -> TestFunction:
    """``cos(2 pi f)`` (``part="real"``) or ``sin(2 pi f)`` (``part="imag"``)."""
    trig = {"real": np.cos, "imag": np.sin}[part]
    tag = "h_R" if part == "real" else "h_I"
    return TestFunction(f"{tag}[{f.id}]", lambda x: trig(2 * np.pi * f(x)), f.smoothness)


def parse_function(spec: str) -> TestFunction:
    """Build a catalogue function from its string id.

    Accepted forms: ``paper_fn``, ``constant:0.25``, ``linear:2,0``,
    ``poly:1,0,-2`` and ``cos_k:3``.
    """
    name, _, args = spec.strip().partition(":")
    values = [a for a in args.split(",") if a.strip()] if args else []
    try:
        if name == "paper_fn" and not values:
            return paper_fn()
        if name == "constant" and len(values) == 1:
            return constant(float(values[0]))
        if name == "linear" and len(values) == 2:
            return linear(float(values[0]), float(values[1]))
        if name == "poly" and values:
            return poly(float(v) for v in values)
        if name == "cos_k" and len(values) == 1:
            return cos_k(int(values[0]))
    except ValueError as exc:
        raise ValueError(f"bad arguments in function id {spec!r}: {exc}") from None
    raise ValueError(f"unknown function id {spec!r}")


@dataclass(frozen=True)
class NoiseModel:
    """i.i.d. ``N(0, sigma^2)`` noise drawn from a seeded PCG64 stream."""

    sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def draw(self, n: int) -> np.ndarray:
        rng = np.random.Generator(np.random.PCG64(int(self.seed)))
        return rng.normal(0.0, 1.0, size=n) * self.sigma


@dataclass(frozen=True)
class ModuloSamples:
    grid: UniformGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} values, got shape {values.shape}")
        if np.any(values < 0) or np.any(values >= 1):
            raise ValueError("modulo samples must lie in [0, 1)")
        object.__setattr__(self, "values", values)


def sample_modulo(f: TestFunction, grid: UniformGrid, noise: NoiseModel) -> ModuloSamples:
    """Observe ``y_i = (f(x_i) + eta_i) mod 1`` on ``grid``."""
    x = grid.points
    return ModuloSamples(grid, frac(f(x) + noise.draw(grid.n)))


def _derivative(f, x, order, h):
    # central difference stencil of the order-th derivative
    acc = np.zeros_like(x)
    for k in range(order + 1):
        acc += (-1) ** k * math.comb(order, k) * f(x + (order / 2 - k) * h)
    return acc / h**order


def holder_seminorm_estimate(f, l: int, alpha: float, n_probe: int = 2000,
                             max_separation: float = 0.1) -> float:
    """Finite-difference lower witness of the Hölder seminorm of ``f^(l)``.

    Returns the largest ratio ``|f^(l)(x) - f^(l)(y)| / |x - y|^alpha`` over
    probe pairs no further apart than ``max_separation``. Derivatives use
    central differences with step ``1/n_probe``; the stencil stays inside
    [0, 1].
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    if n_probe < 10 * (l + 2):
        raise ValueError(f"n_probe={n_probe} too small for l={l}; need >= {10 * (l + 2)}")
    h = 1.0 / n_probe
    if h**l < 1e-250:
        raise ValueError(f"derivative order {l} underflows at step {h:g}")
    reach = math.ceil(l / 2)
    x = np.arange(reach, n_probe - reach + 1) * h
    d = _derivative(f, x, l, h) if l > 0 else np.asarray(f(x), dtype=float)
    span = max(1, int(max_separation * n_probe + 1e-9))
    best = 0.0
    for lag in range(1, min(span, len(x) - 1) + 1):
        ratio = np.abs(d[lag:] - d[:-lag]).max() / (lag * h) ** alpha
        best = max(best, float(ratio))
    return best
