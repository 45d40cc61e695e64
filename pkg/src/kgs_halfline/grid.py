"""Spatial grids, discrete Fourier transforms and Fourier multipliers.

The whole line is truncated to the periodic box ``[-L, L)`` sampled at ``N``
points (``N`` even, so ``x = 0`` is a node).  Transforms follow the integral
convention

    f_hat(xi) = \\int e^{-i x xi} f(x) dx,

approximated by ``dx * sum_j exp(-i xi_k x_j) f_j`` on the frequencies
``xi_k = pi k / L``.  The matching inverse is
``f_j = (1 / 2L) * sum_k exp(i xi_k x_j) f_hat_k`` and the discrete Plancherel
identity reads

    dx * sum |f_j|^2 = (1 / 2L) * sum |f_hat_k|^2.

Every norm in the package that is phrased through ``f_hat`` uses this
``1 / 2L`` weight, so that ``H^0`` agrees with ``L^2``.  Coefficient arrays are
kept in numpy FFT order (``k = 0, 1, ..., N/2-1, -N/2, ..., -1``).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConfigurationError, NumericError

__all__ = [
    "SpatialGrid",
    "Field",
    "SpectralField",
    "make_grid",
    "forward_dft",
    "inverse_dft",
    "apply_multiplier",
    "d_symbol",
    "d_operator",
    "d_inverse",
    "sobolev_norm",
    "japanese",
    "fft_x",
    "ifft_x",
    "check_edge_mass",
    "reflect",
    "spectral_norm",
]


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform periodic grid on ``[-L, L)`` with ``N`` nodes."""

    L: float
    N: int

    def __post_init__(self):
        if not (np.isfinite(self.L) and self.L > 0):
            raise ConfigurationError(f"grid half-width must be positive, got L={self.L}")
        if int(self.N) != self.N or self.N % 2 or self.N < 8:
            raise ConfigurationError(f"grid size must be an even integer >= 8, got N={self.N}")
        object.__setattr__(self, "N", int(self.N))

    @property
    def dx(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def x(self) -> np.ndarray:
        return -self.L + self.dx * np.arange(self.N)

    @property
    def origin(self) -> int:
        """Index of the node ``x = 0``."""
        return self.N // 2

    @property
    def xi(self) -> np.ndarray:
        """Frequencies ``pi k / L`` in FFT order."""
        return np.pi / self.L * np.fft.fftfreq(self.N, d=1.0 / self.N)

    @property
    def k(self) -> np.ndarray:
        return np.fft.fftfreq(self.N, d=1.0 / self.N).astype(int)

    @property
    def xi_max(self) -> float:
        return np.pi * (self.N // 2) / self.L

    @property
    def positive(self) -> slice:
        """Slice selecting the nodes with ``x >= 0``."""
        return slice(self.origin, None)

    def _phase(self) -> np.ndarray:
        # exp(-i xi_k x_0) with x_0 = -L equals (-1)^k
        return np.where(self.k % 2 == 0, 1.0, -1.0)


def make_grid(L: float, N: int) -> SpatialGrid:
    return SpatialGrid(float(L), N)


@dataclass(frozen=True)
class Field:
    grid: SpatialGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (self.grid.N,):
            raise ValueError(f"field length {v.shape} does not match grid size {self.grid.N}")
        if not np.all(np.isfinite(v)):
            raise NumericError("field contains non-finite entries")
        v = v.astype(complex if np.iscomplexobj(v) else float, copy=True)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __add__(self, other: "Field") -> "Field":
        _same_grid(self.grid, other.grid)
        return Field(self.grid, self.values + other.values)

    def __sub__(self, other: "Field") -> "Field":
        _same_grid(self.grid, other.grid)
        return Field(self.grid, self.values - other.values)

    def __mul__(self, c) -> "Field":
        return Field(self.grid, c * self.values)

    __rmul__ = __mul__

    def at_origin(self):
        return self.values[self.grid.origin]

    def even_part(self) -> np.ndarray:
        return 0.5 * (self.values + reflect(self.values))

    def odd_part(self) -> np.ndarray:
        return 0.5 * (self.values - reflect(self.values))

    def l2(self) -> float:
        return float(np.sqrt(self.grid.dx * np.sum(np.abs(self.values) ** 2)))


@dataclass(frozen=True)
class SpectralField:
    grid: SpatialGrid
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.shape != (self.grid.N,):
            raise ValueError(f"coefficient length {c.shape} does not match grid size {self.grid.N}")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)


def reflect(values: np.ndarray) -> np.ndarray:
    """Return ``v(-x)`` sampled on the grid (last axis).

    Node ``j`` sits at ``-L + j dx`` so ``-x_j`` is node ``N - j`` modulo ``N``;
    node 0 (``x = -L``) maps to itself by periodicity.
    """
    return np.roll(np.flip(values, axis=-1), 1, axis=-1)


def _same_grid(a: SpatialGrid, b: SpatialGrid):
    if a != b:
        raise ValueError(f"grid mismatch: {a} vs {b}")


def fft_x(grid: SpatialGrid, values: np.ndarray) -> np.ndarray:
    """Array-level forward transform along the last axis."""
    return grid.dx * grid._phase() * np.fft.fft(values, axis=-1)


def ifft_x(grid: SpatialGrid, coeffs: np.ndarray) -> np.ndarray:
    """Array-level inverse of :func:`fft_x`."""
    return np.fft.ifft(coeffs * grid._phase(), axis=-1) / grid.dx


def forward_dft(f: Field) -> SpectralField:
    return SpectralField(f.grid, fft_x(f.grid, f.values))


def inverse_dft(F: SpectralField) -> Field:
    return Field(F.grid, ifft_x(F.grid, F.coefficients))


def apply_multiplier(F: SpectralField, m: Callable[[np.ndarray], np.ndarray] | np.ndarray) -> SpectralField:
    """Multiply coefficients by ``m(xi)`` (a callable or a precomputed array)."""
    values = m(F.grid.xi) if callable(m) else m
    values = np.broadcast_to(np.asarray(values), F.coefficients.shape)
    if not np.all(np.isfinite(values)):
        raise NumericError("multiplier is not finite on the grid frequencies")
    return SpectralField(F.grid, F.coefficients * values)


def japanese(xi: np.ndarray) -> np.ndarray:
    return np.sqrt(1.0 + xi * xi)


def d_symbol(xi: np.ndarray) -> np.ndarray:
    """``sgn(xi) <xi>`` with the discrete convention ``sgn(0) = 1``."""
    return np.where(xi >= 0, 1.0, -1.0) * japanese(xi)


def d_operator(f: Field) -> Field:
    return inverse_dft(apply_multiplier(forward_dft(f), d_symbol))


def d_inverse(f: Field) -> Field:
    return inverse_dft(apply_multiplier(forward_dft(f), lambda xi: 1.0 / d_symbol(xi)))


def sobolev_norm(f: Field, s: float) -> float:
    """Discrete ``|| <xi>^s f_hat ||`` with the Plancherel weight ``1 / 2L``."""
    return spectral_norm(f.grid, fft_x(f.grid, f.values), s)


def spectral_norm(grid: SpatialGrid, coeffs: np.ndarray, s: float) -> float:
    w = japanese(grid.xi) ** (2.0 * s)
    return float(np.sqrt(np.sum(w * np.abs(coeffs) ** 2) / (2.0 * grid.L)))


def check_edge_mass(grid: SpatialGrid, values: np.ndarray, cells: int = 5, rel_tol: float = 1e-6,
                    label: str = "field") -> float:
    """Warn if a field carries mass within ``cells`` nodes of ``x = +-L``.

    Returns the relative edge amplitude.
    """
    v = np.abs(np.atleast_2d(values))
    peak = v.max()
    if peak == 0:
        return 0.0
    edge = max(v[:, :cells].max(), v[:, -cells:].max()) / peak
    if edge > rel_tol:
        warnings.warn(f"{label}: relative amplitude {edge:.2e} near the periodic edge", RuntimeWarning,
                      stacklevel=2)
    return float(edge)
