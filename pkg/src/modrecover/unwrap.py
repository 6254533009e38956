"""Sequential 1-D unwrapping of denoised fractional phases."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal_model import SmoothnessParams, UniformGrid

__all__ = ["UnwrappedSamples", "unwrap", "check_unwrap_feasibility"]


@dataclass(frozen=True)
class UnwrappedSamples:
    """Real sample estimates, determined up to one global integer."""

    grid: UniformGrid
    values: np.ndarray


def unwrap(phases, grid: UniformGrid | None = None) -> UnwrappedSamples:
    """Integrate consecutive phase differences, folding jumps larger than 1/2.

    ``d_i = g_i - g_{i-1}`` is used as is when ``|d_i| <= 1/2``, shifted by
    +1 when ``d_i < -1/2`` and by -1 when ``d_i > 1/2``. Only integers are
    ever added to the input, so ``frac(out) == phases`` exactly.
    """
    g = np.asarray(phases, dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise ValueError("phases must be a nonempty 1-D sequence")
    if grid is None:
        grid = UniformGrid(g.size)
    elif grid.n != g.size:
        raise ValueError(f"grid has {grid.n} points but {g.size} phases were given")
    d = np.diff(g)
    jumps = (d < -0.5).astype(np.int64) - (d > 0.5).astype(np.int64)
    offsets = np.concatenate(([0], np.cumsum(jumps)))
    return UnwrappedSamples(grid, g + offsets)


def check_unwrap_feasibility(delta_n: float, smoothness: SmoothnessParams, n: int) -> bool:
    """Whether ``delta_n + 2 L / n^min(beta, 1) < 1`` (advisory only)."""
    if delta_n < 0:
        raise ValueError("delta_n must be nonnegative")
    return delta_n + 2 * smoothness.L / n ** min(smoothness.beta, 1.0) < 1

