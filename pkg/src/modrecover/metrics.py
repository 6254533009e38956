"""Error metrics and calculators for the theoretical error bounds.

``log`` is the natural logarithm throughout. The exponential factors in the
variance constant follow the Gaussian characteristic function
``E[exp(2 pi i eta)] = exp(-2 pi^2 sigma^2)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import ndtri

from .circle import wrap_distance

__all__ = [
    "ErrorReport",
    "TheoryConstants",
    "wrap_rmse",
    "wrap_max",
    "aligned_error",
    "error_report",
    "a_sigma",
    "circular_moment",
    "monte_carlo_circular_moment",
    "theoretical_bandwidth",
    "theoretical_delta",
    "bias_variance_bound",
]


@dataclass(frozen=True)
class ErrorReport:
    wrap_rmse: float
    wrap_max: float
    aligned_rmse: float
    aligned_max: float
    shift_q: int


def _pair(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.size == 0:
        raise ValueError(f"expected equal nonempty shapes, got {a.shape} and {b.shape}")
    return a, b


def wrap_rmse(est, truth) -> float:
    est, truth = _pair(est, truth)
    return float(np.sqrt(np.mean(wrap_distance(est, truth) ** 2)))


def wrap_max(est, truth) -> float:
    est, truth = _pair(est, truth)
    return float(np.max(wrap_distance(est, truth)))


def aligned_error(est, truth) -> tuple[float, float, int]:
    """RMSE and max error of ``est + q`` against ``truth`` at the best integer ``q``.

    The RMSE is a convex quadratic in ``q``, so only the two integers that
    bracket ``mean(truth - est)`` are candidates; ties go to the smaller one.
    """
    est, truth = _pair(est, truth)
    m = float(np.mean(truth - est))
    best = None
    for q in sorted({math.floor(m), math.ceil(m)}):
        resid = est + q - truth
        rmse = float(np.sqrt(np.mean(resid**2)))
        if best is None or rmse < best[0]:
            best = (rmse, float(np.max(np.abs(resid))), int(q))
    return best


def error_report(est_phases, true_phases, est_values, true_values) -> ErrorReport:
    rmse, amax, q = aligned_error(est_values, true_values)
    return ErrorReport(wrap_rmse(est_phases, true_phases), wrap_max(est_phases, true_phases), rmse, amax, q)


def circular_moment(sigma: float) -> float:
    """``E[exp(2 pi i eta)]`` for ``eta ~ N(0, sigma^2)``, i.e. ``exp(-2 pi^2 sigma^2)``."""
    return math.exp(-2 * math.pi**2 * sigma**2)


def monte_carlo_circular_moment(sigma: float, draws: int = 10**6, seed: int = 0,
                                method: str = "stratified") -> complex:
    """Sample mean of ``exp(2 pi i eta)`` over ``draws`` Gaussian draws.

    ``method="plain"`` uses i.i.d. draws (standard error about
    ``0.7 / sqrt(draws)``); ``"stratified"`` takes one draw from each of
    ``draws`` equal-probability strata, which removes most of that error.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    if method == "plain":
        eta = rng.normal(0.0, sigma, size=draws)
    elif method == "stratified":
        u = (np.arange(draws) + rng.uniform(size=draws)) / draws
        eta = sigma * ndtri(u)
    else:
        raise ValueError(f"unknown method {method!r}")
    return complex(np.mean(np.exp(2j * np.pi * eta)))


def a_sigma(sigma: float) -> float:
    """``sqrt(e^{4 pi^2 s^2} - 1) + 1 + e^{2 pi^2 s^2}``."""
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    e2 = math.exp(2 * math.pi**2 * sigma**2)
    return math.sqrt(e2 * e2 - 1.0) + 1.0 + e2


@dataclass(frozen=True)
class TheoryConstants:
    """Constants entering the bandwidth and uniform-error formulas.

    ``m_prime`` (Hölder constant of the circle components) and ``lambda0``
    (eigenvalue floor of the local design matrix) cannot be computed from
    first principles and are supplied by the user.
    """

    sigma: float = 0.12
    c: float = 2.0
    m_prime: float = 1.0
    k_max: float = 0.75
    lambda0: float = 0.1
    l: int = 2
    beta: float = 2.4

    def __post_init__(self):
        if self.c < 2:
            raise ValueError("c must be >= 2")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        for name in ("m_prime", "k_max", "lambda0", "beta"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.l < 0:
            raise ValueError("l must be nonnegative")

    @property
    def a_sigma(self) -> float:
        return a_sigma(self.sigma)

    @property
    def c_star(self) -> float:
        return 8 * self.k_max / self.lambda0

    @property
    def q1(self) -> float:
        return 4 * self.m_prime * self.c_star / math.factorial(self.l)

    @property
    def q2(self) -> float:
        return 8 * self.c * self.c_star * self.a_sigma

    @classmethod
    def from_json(cls, path) -> "TheoryConstants":
        with open(path) as fh:
            data = json.load(fh)
        return cls(**{k: v for k, v in data.items() if k in cls.__dataclass_fields__})

    def to_dict(self) -> dict:
        return asdict(self)


def theoretical_bandwidth(consts: TheoryConstants, n: int) -> float:
    """``(c A l! / (beta M'))^(2/(2 beta + 1)) (log n / n)^(1/(2 beta + 1))``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    b = consts.beta
    pre = consts.c * consts.a_sigma * math.factorial(consts.l) / (b * consts.m_prime)
    return pre ** (2 / (2 * b + 1)) * (math.log(n) / n) ** (1 / (2 * b + 1))


def theoretical_delta(consts: TheoryConstants, n: int) -> float:
    """High-probability uniform bound on the circle-denoising error."""
    if n < 2:
        raise ValueError("n must be >= 2")
    b = consts.beta
    g1 = 32 * consts.m_prime * consts.k_max / (math.factorial(consts.l) * consts.lambda0)
    g2 = 64 * consts.c * consts.k_max * consts.a_sigma / consts.lambda0
    bracket = (2 * b) ** (-2 * b / (2 * b + 1)) + (2 * b) ** (1 / (2 * b + 1))
    return (g1 ** (1 / (2 * b + 1)) * g2 ** (2 * b / (2 * b + 1)) * bracket
            * (math.log(n) / n) ** (b / (2 * b + 1)))


def bias_variance_bound(consts: TheoryConstants, n: int, bandwidth: float) -> float:
    """``q1 b^beta + q2 sqrt(log n / (n b))``."""
    return consts.q1 * bandwidth**consts.beta + consts.q2 * math.sqrt(math.log(n) / (n * bandwidth))
