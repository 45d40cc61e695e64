"""Smooth cutoff profiles built from the ``exp(-1/x)`` bridge."""

from __future__ import annotations

import numpy as np

__all__ = ["psi", "rho", "eta", "eta_T"]


def psi(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = np.exp(-1.0 / x[pos])
    return out


def rho(y):
    """1 on ``[0, inf)``, 0 on ``(-inf, -1]``, C-infinity in between."""
    y = np.asarray(y, dtype=float)
    a, b = psi(1.0 + y), psi(-y)
    den = a + b
    out = np.where(y >= 0, 1.0, 0.0)
    mid = (y > -1) & (y < 0)
    out[mid] = a[mid] / den[mid]
    return out


def eta(t):
    """Bump equal to 1 on ``[-1, 1]`` and supported in ``[-2, 2]``."""
    return rho(1.0 - np.abs(np.asarray(t, dtype=float)))


def eta_T(t, T: float):
    return eta(np.asarray(t, dtype=float) / T)
