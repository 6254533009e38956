"""Compactly supported smoothing kernels with their two-sided bound constants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["KernelSpec", "EPANECHNIKOV", "BOX", "TRIANGULAR", "KERNELS", "get_kernel"]


@dataclass(frozen=True)
class KernelSpec:
    """Kernel supported on [-1, 1].

    The constants satisfy ``k_min * 1{|u| <= delta} <= K(u) <= k_max * 1{|u| <= 1}``.
    """

    id: str
    k_min: float
    k_max: float
    delta: float

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        a = np.abs(u)
        inside = a <= 1.0
        if self.id == "epanechnikov":
            out = 0.75 * (1.0 - u * u)
        elif self.id == "box":
            out = np.full(u.shape, 0.5)
        elif self.id == "triangular":
            out = 1.0 - a
        else:
            raise ValueError(f"unknown kernel {self.id!r}")
        out = np.where(inside, out, 0.0)
        return out.item() if out.ndim == 0 else out

    def eval(self, u):
        return self(u)


EPANECHNIKOV = KernelSpec("epanechnikov", k_min=0.5625, k_max=0.75, delta=0.5)
BOX = KernelSpec("box", k_min=0.5, k_max=0.5, delta=1.0)
TRIANGULAR = KernelSpec("triangular", k_min=0.5, k_max=1.0, delta=0.5)

KERNELS = {k.id: k for k in (EPANECHNIKOV, BOX, TRIANGULAR)}


def get_kernel(kernel) -> KernelSpec:
    """Resolve a kernel id (or pass a ``KernelSpec`` through)."""
    if isinstance(kernel, KernelSpec):
        return kernel
    try:
        return KERNELS[str(kernel).lower()]
    except KeyError:
        raise ValueError(f"unknown kernel {kernel!r}; choose from {sorted(KERNELS)}") from None
