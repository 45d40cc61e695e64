"""Whole-line linear propagators: Schrodinger group, half-wave groups, Klein-Gordon flow."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .grid import Field, apply_multiplier, d_inverse, d_symbol, fft_x, forward_dft, ifft_x, inverse_dft, japanese

__all__ = [
    "PhiPair",
    "schrodinger_flow",
    "halfwave_flow",
    "kg_flow",
    "make_phi",
    "phi_solution",
    "schrodinger_trajectory",
    "halfwave_trajectory",
    "REAL_TOL",
]

REAL_TOL = 1e-10


def schrodinger_flow(u0: Field, t: float) -> Field:
    """``e^{it Delta} u0``: multiplier ``exp(-i t xi^2)``."""
    return inverse_dft(apply_multiplier(forward_dft(u0), lambda xi: np.exp(-1j * t * xi * xi)))


def halfwave_flow(phi: Field, t: float, sign: int = 1) -> Field:
    """``e^{+-itD} phi``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return inverse_dft(apply_multiplier(forward_dft(phi), lambda xi: np.exp(sign * 1j * t * d_symbol(xi))))


def _require_real(f: Field, name: str) -> np.ndarray:
    v = f.values
    if np.iscomplexobj(v):
        scale = max(np.max(np.abs(v)), 1.0)
        if np.max(np.abs(v.imag)) > REAL_TOL * scale:
            raise ValidationError(f"{name} must be real-valued")
        v = v.real
    return v


def kg_flow(n0: Field, n1: Field, t: float) -> tuple[Field, Field]:
    """Klein-Gordon flow on the line; returns ``(n(t), n_t(t))``.

    Both multipliers ``cos(t<xi>)`` and ``sin(t<xi>)/<xi>`` are even and real,
    so real data stay real and odd data stay odd.
    """
    grid = n0.grid
    a = fft_x(grid, _require_real(n0, "n0"))
    b = fft_x(grid, _require_real(n1, "n1"))
    w = japanese(grid.xi)
    c, s = np.cos(t * w), np.sin(t * w)
    n = ifft_x(grid, c * a + s / w * b).real
    nt = ifft_x(grid, -w * s * a + c * b).real
    return Field(grid, n), Field(grid, nt)


@dataclass(frozen=True)
class PhiPair:
    plus: Field
    minus: Field

    @property
    def n0(self) -> Field:
        return Field(self.plus.grid, 0.5 * (self.plus.values + self.minus.values))

    @property
    def n1(self) -> Field:
        grid = self.plus.grid
        c = fft_x(grid, self.plus.values - self.minus.values)
        return Field(grid, ifft_x(grid, 0.5j * d_symbol(grid.xi) * c))


def make_phi(n0e: Field, n1e: Field) -> PhiPair:
    """``phi_+- = n0 -+ i D^{-1} n1``."""
    n0 = _require_real(n0e, "n0e")
    _require_real(n1e, "n1e")
    w = 1j * d_inverse(n1e).values
    return PhiPair(Field(n0e.grid, n0 - w), Field(n0e.grid, n0 + w))


def phi_solution(phi: PhiPair, t: float) -> Field:
    """``(e^{itD} phi_+ + e^{-itD} phi_-) / 2``."""
    v = 0.5 * (halfwave_flow(phi.plus, t, 1).values + halfwave_flow(phi.minus, t, -1).values)
    return Field(phi.plus.grid, v)


def schrodinger_trajectory(grid, u0: np.ndarray, times: np.ndarray, spectral: bool = False) -> np.ndarray:
    """Free Schrodinger evolution sampled at ``times``; shape ``(M, N)``."""
    c = fft_x(grid, u0)
    out = np.exp(-1j * np.outer(times, grid.xi ** 2)) * c
    return out if spectral else ifft_x(grid, out)


def halfwave_trajectory(grid, phi: np.ndarray, times: np.ndarray, sign: int, spectral: bool = False) -> np.ndarray:
    c = fft_x(grid, phi)
    out = np.exp(sign * 1j * np.outer(times, d_symbol(grid.xi))) * c
    return out if spectral else ifft_x(grid, out)
