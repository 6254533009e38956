"""Unit-circle geometry for fractional phases.

Circle points are plain complex numbers (scalars or numpy arrays); phases are
reals in [0, 1). All functions broadcast over arrays.
"""

import numpy as np

__all__ = ["lift", "project", "phase", "wrap_distance"]

TWO_PI = 2.0 * np.pi


def _scalar_or_array(out):
    return out.item() if np.ndim(out) == 0 else out


def lift(t):
    """Map fractional phase ``t`` to ``exp(2 pi i t)``."""
    t = np.asarray(t, dtype=float)
    return _scalar_or_array(np.cos(TWO_PI * t) + 1j * np.sin(TWO_PI * t))


def project(u):
    """Normalise ``u`` onto the unit circle; exact zeros map to ``1``."""
    u = np.asarray(u, dtype=complex)
    mod = np.abs(u)
    safe = np.where(mod > 0, mod, 1.0)
    return _scalar_or_array(np.where(mod > 0, u / safe, 1.0 + 0j))


def phase(p):
    """Fractional phase ``arg(p) / 2 pi`` mapped into [0, 1)."""
    t = np.mod(np.angle(np.asarray(p, dtype=complex)) / TWO_PI, 1.0)
    t = np.where(t >= 1.0, 0.0, t)
    return _scalar_or_array(t)


def wrap_distance(t, s):
    """Wrap-around distance ``min(|t - s|, 1 - |t - s|)``, valued in [0, 1/2].

    Inputs are expected in [0, 1); the result is clamped to be nonnegative
    against rounding.
    """
    d = np.abs(np.asarray(t, dtype=float) - np.asarray(s, dtype=float))
    d = np.mod(d, 1.0)
    return _scalar_or_array(np.minimum(d, 1.0 - d))
