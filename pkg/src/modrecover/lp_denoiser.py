"""Local polynomial (LP) denoising of circle-valued samples.

Each grid point gets a kernel-weighted polynomial fit of order ``l`` to the
lifted samples ``z_j = exp(2 pi i y_j)``; the intercept is projected back
onto the unit circle and its phase is the denoised modulo value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circle import lift, phase, project
from .errors import IllConditioned
from .kernels import EPANECHNIKOV, KernelSpec, get_kernel
from .signal_model import ModuloSamples, UniformGrid

__all__ = [
    "LpConfig",
    "LpWeights",
    "DenoisedModulo",
    "practical_bandwidth",
    "design_vector",
    "design_matrix",
    "build_bnx",
    "lp_weights",
    "weighted_ls_solve",
    "smooth_complex",
    "denoise",
]


def practical_bandwidth(n: int, beta: float = 2.4, const: float = 0.1) -> float:
    """Bandwidth rule ``const * (log n / n)^(beta / (2 beta + 1))``.

    The exponent differs from the theory-optimal bandwidth, which scales as
    ``(log n / n)^(1 / (2 beta + 1))`` (see ``theoretical_bandwidth``).
    """
    return const * (math.log(n) / n) ** (beta / (2 * beta + 1))


@dataclass(frozen=True)
class LpConfig:
    order_l: int = 2
    bandwidth_b: float = 0.05
    kernel: KernelSpec = EPANECHNIKOV
    min_eig_threshold: float = 1e-8

    def __post_init__(self):
        if self.order_l < 0:
            raise ValueError("order_l must be nonnegative")
        if not self.bandwidth_b > 0:
            raise ValueError("bandwidth_b must be positive")
        if not self.min_eig_threshold > 0:
            raise ValueError("min_eig_threshold must be positive")
        object.__setattr__(self, "kernel", get_kernel(self.kernel))


@dataclass(frozen=True)
class LpWeights:
    """LP weights at ``center_x``; ``weights[k]`` belongs to grid index ``indices[k]``."""

    center_x: float
    indices: np.ndarray
    weights: np.ndarray
    min_eig: float

    def dense(self, n: int) -> np.ndarray:
        out = np.zeros(n)
        out[self.indices] = self.weights
        return out


@dataclass(frozen=True)
class DenoisedModulo:
    grid: UniformGrid
    raw_estimates: np.ndarray
    circle_estimates: np.ndarray
    phases: np.ndarray
    min_eig_overall: float = field(default=float("nan"))


def design_vector(u: float, l: int) -> np.ndarray:
    """``(1, u, u^2/2!, ..., u^l/l!)``."""
    return design_matrix(np.array([u], dtype=float), l)[0]


def design_matrix(u, l: int) -> np.ndarray:
    """Rows are ``design_vector(u_k, l)`` for each entry of ``u``."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    u = np.asarray(u, dtype=float)
    out = np.empty((u.size, l + 1))
    out[:, 0] = 1.0
    for k in range(1, l + 1):
        out[:, k] = out[:, k - 1] * u / k
    return out


def _local_design(grid: UniformGrid, x: float, cfg: LpConfig):
    lo, hi = grid.window(x, cfg.bandwidth_b)
    idx = np.arange(lo, hi)
    u = np.clip((grid.points[idx] - x) / cfg.bandwidth_b, -1.0, 1.0)
    return idx, design_matrix(u, cfg.order_l), cfg.kernel(u)


def build_bnx(grid: UniformGrid, x: float, cfg: LpConfig) -> np.ndarray:
    """Kernel-weighted moment matrix ``(1/nb) sum_i U(u_i) U(u_i)^T K(u_i)``."""
    _, U, K = _local_design(grid, x, cfg)
    return (U.T * K) @ U / (grid.n * cfg.bandwidth_b)


def lp_weights(grid: UniformGrid, x: float, cfg: LpConfig) -> LpWeights:
    """Effective LP smoother weights at ``x``.

    Raises
    ------
    IllConditioned
        If the smallest eigenvalue of the moment matrix is below
        ``cfg.min_eig_threshold``.
    """
    idx, U, K = _local_design(grid, x, cfg)
    nb = grid.n * cfg.bandwidth_b
    B = (U.T * K) @ U / nb
    evals, evecs = np.linalg.eigh(B)
    min_eig = float(evals[0]) if evals.size else 0.0
    if min_eig < cfg.min_eig_threshold:
        raise IllConditioned(min_eig, x, cfg.min_eig_threshold)
    # B v = U(0) through the eigendecomposition, no explicit inverse
    v = evecs @ (evecs[0] / evals)
    weights = (U @ v) * K / nb
    return LpWeights(float(x), idx, weights, min_eig)


def weighted_ls_solve(targets, grid: UniformGrid, x: float, cfg: LpConfig) -> np.ndarray:
    """Coefficients minimising ``sum_i |z_i - theta^T U(u_i)|^2 K(u_i)``.

    Solved as a weighted least-squares problem on the window, independently
    of the closed-form weights; the intercept ``theta[0]`` equals the
    LP estimate at ``x``.
    """
    targets = np.asarray(targets)
    idx, U, K = _local_design(grid, x, cfg)
    B = (U.T * K) @ U / (grid.n * cfg.bandwidth_b)
    min_eig = float(np.linalg.eigvalsh(B)[0]) if B.size else 0.0
    if min_eig < cfg.min_eig_threshold:
        raise IllConditioned(min_eig, x, cfg.min_eig_threshold)
    w = np.sqrt(K)
    theta, *_ = np.linalg.lstsq(U * w[:, None], targets[idx] * w, rcond=None)
    return theta


def smooth_complex(z, grid: UniformGrid, cfg: LpConfig):
    """LP intercepts ``sum_j z_j W_j(x_i)`` at every grid point.

    Returns the complex estimates and the smallest eigenvalue met.
    """
    z = np.asarray(z, dtype=complex)
    if cfg.bandwidth_b < 1.0 / (2 * grid.n):
        raise ValueError(f"bandwidth {cfg.bandwidth_b:g} below 1/(2n) = {1 / (2 * grid.n):g}")
    raw = np.empty(grid.n, dtype=complex)
    worst = math.inf
    for i, x in enumerate(grid.points):
        w = lp_weights(grid, x, cfg)
        raw[i] = np.dot(z[w.indices], w.weights)
        worst = min(worst, w.min_eig)
    return raw, worst


def denoise(samples: ModuloSamples, cfg: LpConfig) -> DenoisedModulo:
    """Denoise modulo samples with LP(l) on the unit circle."""
    raw, worst = smooth_complex(lift(samples.values), samples.grid, cfg)
    circle = project(raw)
    return DenoisedModulo(samples.grid, raw, circle, phase(circle), worst)
