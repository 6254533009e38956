"""k-nearest-neighbour averaging on the unit circle (baseline denoiser)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circle import lift, phase, project
from .lp_denoiser import DenoisedModulo
from .signal_model import ModuloSamples

__all__ = ["KnnConfig", "auto_k", "knn_windows", "knn_denoise"]


def auto_k(n: int) -> int:
    """``ceil(0.09 n^(2/3) (log n)^(1/3))``, clipped to [1, n]."""
    k = math.ceil(0.09 * n ** (2 / 3) * math.log(n) ** (1 / 3))
    return min(max(k, 1), n)


@dataclass(frozen=True)
class KnnConfig:
    k: int | None = None
    auto_rule: bool = False

    def __post_init__(self):
        if not self.auto_rule and self.k is None:
            raise ValueError("set k or enable auto_rule")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be positive")

    def resolve(self, n: int) -> int:
        k = auto_k(n) if self.auto_rule else int(self.k)
        if k > n:
            raise ValueError(f"k={k} exceeds the number of samples n={n}")
        return k


def knn_windows(n: int, k: int) -> np.ndarray:
    """First index of the k-neighbour window of every grid point.

    On a uniform grid the k nearest points form a contiguous run. Equidistant
    candidates go to the smaller index, and windows at the boundaries are
    shifted inward so each holds exactly ``k`` points.
    """
    start = np.arange(n) - k // 2
    return np.clip(start, 0, n - k)


def knn_denoise(samples: ModuloSamples, cfg: KnnConfig) -> DenoisedModulo:
    n = samples.grid.n
    k = cfg.resolve(n)
    z = lift(samples.values)
    start = knn_windows(n, k)
    raw = np.empty(n, dtype=complex)
    for i, s in enumerate(start):
        raw[i] = z[s:s + k].sum() / k
    circle = project(raw)
    return DenoisedModulo(samples.grid, raw, circle, phase(circle))
