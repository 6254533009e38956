"""Blended local Lagrange quasi-interpolation on the uniform grid.

Every node ``x_j`` owns the degree-``r`` interpolant ``P_j`` through the
``r + 1`` nodes nearest to it (windows clamped at the ends). On a segment
``[x_j, x_{j+1}]`` the estimate is ``(1 - t) P_j + t P_{j+1}`` with
``t = n (x - x_j)``. The result is continuous, interpolates the samples,
reproduces polynomials of degree ``<= r`` and only looks at nodes within
``r + 1`` grid steps.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientSamples
from .knn_denoiser import knn_windows
from .signal_model import UniformGrid
from .unwrap import UnwrappedSamples

__all__ = ["QiOperator", "RecoveredFunction", "build_qi", "eval_recovered"]


@dataclass(frozen=True)
class QiOperator:
    """Linear map from grid samples to a continuous function on [0, 1].

    ``coefficients[j]`` holds the power-basis coefficients of ``P_j`` in the
    local variable ``v = n x - (j + 1)`` (grid steps away from ``x_j``).
    """

    degree: int
    grid: UniformGrid
    starts: np.ndarray = field(repr=False)
    coefficients: np.ndarray = field(repr=False)

    @classmethod
    def from_samples(cls, values, degree: int, grid: UniformGrid | None = None) -> "QiOperator":
        values = np.asarray(values, dtype=float)
        grid = grid or UniformGrid(values.size)
        n = grid.n
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        if n < degree + 1:
            raise InsufficientSamples(f"need at least {degree + 1} samples for degree {degree}, got {n}")
        starts = knn_windows(n, degree + 1)
        offsets = starts[:, None] + np.arange(degree + 1)[None, :] - np.arange(n)[:, None]
        coefs = np.empty((n, degree + 1))
        inverses = {}
        for j in range(n):
            key = tuple(offsets[j])
            if key not in inverses:
                inverses[key] = np.linalg.inv(np.vander(offsets[j].astype(float), degree + 1, increasing=True))
            coefs[j] = inverses[key] @ values[starts[j]:starts[j] + degree + 1]
        return cls(degree, grid, starts, coefs)

    def _segments(self, x):
        n = self.grid.n
        s = n * np.asarray(x, dtype=float)
        seg = np.clip(np.floor(s).astype(np.int64) - 1, -1, max(n - 2, -1))
        t = s - (seg + 1)
        return s, seg, t

    def _node_poly(self, j, s):
        v = s - (j + 1)
        c = self.coefficients[j]
        out = c[:, -1].copy()
        for k in range(self.degree - 1, -1, -1):
            out = out * v + c[:, k]
        return out

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        s, seg, t = self._segments(flat)
        left = np.maximum(seg, 0)
        right = np.minimum(seg + 1, self.grid.n - 1)
        t = np.where(seg < 0, 0.0, t)
        out = (1 - t) * self._node_poly(left, s) + t * self._node_poly(right, s)
        out = out.reshape(x.shape)
        return out.item() if out.ndim == 0 else out

    def basis_matrix(self, x) -> np.ndarray:
        """Dense ``(len(x), n)`` matrix ``A`` with ``Q(s)(x) = A @ s``.

        Built from Lagrange basis weights rather than the stored
        coefficients, so it doubles as a cross-check of the evaluator.
        """
        x = np.atleast_1d(np.asarray(x, dtype=float))
        n, r = self.grid.n, self.degree
        s, seg, t = self._segments(x)
        t = np.where(seg < 0, 0.0, t)
        A = np.zeros((x.size, n))
        rows = np.arange(x.size)
        for node, weight in ((np.maximum(seg, 0), 1 - t), (np.minimum(seg + 1, n - 1), t)):
            start = self.starts[node]
            nodes = start[:, None] + np.arange(r + 1)[None, :]
            v = (s - (node + 1))[:, None]
            off = (nodes - node[:, None]).astype(float)
            for a in range(r + 1):
                ell = np.ones(x.size)
                for b in range(r + 1):
                    if b != a:
                        ell *= (v[:, 0] - off[:, b]) / (off[:, a] - off[:, b])
                np.add.at(A, (rows, nodes[:, a]), weight * ell)
        return A

    def lebesgue_constant(self, n_probe: int = 2001, include_extrapolation: bool = False) -> float:
        """Largest row ell-1 norm of ``basis_matrix`` over a probe grid.

        By default the probes cover the sample hull ``[1/n, 1]``. On
        ``[0, 1/n)`` the estimate extrapolates ``P_0`` and the norm grows to
        ``2^(r+1) - 1``; pass ``include_extrapolation=True`` to include it.
        """
        lo = 0.0 if include_extrapolation else self.grid.spacing
        A = self.basis_matrix(np.linspace(lo, 1.0, n_probe))
        return float(np.abs(A).sum(axis=1).max())


@dataclass(frozen=True)
class RecoveredFunction:
    qi: QiOperator

    def __call__(self, x):
        return self.qi(x)

    evaluator = __call__

    def table(self, resolution: int = 1001):
        x = np.linspace(0.0, 1.0, resolution)
        return x, self.qi(x)

    def to_csv(self, path, resolution: int = 1001, float_format: str = "{:.12g}"):
        x, y = self.table(resolution)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "f_hat"])
            for xi, yi in zip(x, y):
                w.writerow([float_format.format(xi), float_format.format(yi)])


def build_qi(samples, degree: int = 2) -> RecoveredFunction:
    """Quasi-interpolant of unwrapped samples (or a raw value array)."""
    if isinstance(samples, UnwrappedSamples):
        return RecoveredFunction(QiOperator.from_samples(samples.values, degree, samples.grid))
    return RecoveredFunction(QiOperator.from_samples(samples, degree))


def eval_recovered(f_hat: RecoveredFunction, x):
    return f_hat(x)
