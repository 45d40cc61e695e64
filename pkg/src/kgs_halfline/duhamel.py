"""Inhomogeneous time integrals, boundary-correction traces and the fixed-point map.

Every time integral has the per-mode form
``I(t_k) = int_0^{t_k} exp(-i w (t_k - s)) F(s) ds``, evaluated with the phase
kept exact and ``F`` interpolated linearly between snapshots.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .boundary import (BoundaryKernel, BoundaryKernelConfig, kg_boundary_kernel,
                       schrodinger_boundary_kernel)
from .cutoffs import eta, eta_T
from .grid import Field, SpatialGrid, d_symbol, fft_x, ifft_x, japanese
from .halfline import TimeSeries
from .state import KGSTrajectory, SpaceTimeField

__all__ = [
    "CutoffProfile",
    "make_eta",
    "interval_weights",
    "mode_duhamel",
    "schrodinger_duhamel",
    "schrodinger_duhamel_field",
    "kg_duhamel_npm",
    "kg_duhamel_sum",
    "trace_q",
    "trace_z",
    "odd_forcing",
    "LinearPart",
    "GammaData",
    "gamma_map",
]


@dataclass(frozen=True)
class CutoffProfile:
    times: np.ndarray
    T: float
    values: np.ndarray


def make_eta(times, T: float) -> CutoffProfile:
    if not T > 0:
        raise ValueError("cutoff scale must be positive")
    t = np.asarray(times, dtype=float)
    return CutoffProfile(t, float(T), eta_T(t, T))


def interval_weights(theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``a = int_0^1 u e^{-i theta u} du``, ``b = int_0^1 (1-u) e^{-i theta u} du``.

    ``a`` multiplies the older sample of an interval, ``b`` the newer one.
    """
    z = -1j * np.asarray(theta, dtype=float)
    small = np.abs(z) < 0.1
    zs = np.where(small, 1.0, z)
    ez = np.exp(zs)
    a = (ez * (zs - 1.0) + 1.0) / zs ** 2
    b = (ez - 1.0 - zs) / zs ** 2
    if np.any(small):
        zz = z[small]
        sa = np.zeros(zz.shape, complex)
        sb = np.zeros(zz.shape, complex)
        term = np.ones(zz.shape, complex)
        fact = 1.0
        for n in range(10):
            sa += term / (fact * (n + 2))
            sb += term / (fact * (n + 1) * (n + 2))
            term = term * zz
            fact *= n + 1
        a = np.where(small, 0, a)
        b = np.where(small, 0, b)
        a[small] = sa
        b[small] = sb
    return a, b


def mode_duhamel(coeffs: np.ndarray, omega: np.ndarray, dt: float, upto: int | None = None) -> np.ndarray:
    """Per-mode integrals for forcing coefficients ``coeffs`` of shape ``(M+1, K)``.

    Returns ``I`` with ``I[k] = int_0^{t_k} exp(-i omega (t_k - s)) F(s) ds``.
    """
    c = np.asarray(coeffs)
    M = c.shape[0] - 1 if upto is None else upto
    theta = np.asarray(omega, dtype=float) * dt
    a, b = interval_weights(theta)
    a, b = dt * a, dt * b
    rot = np.exp(-1j * theta)
    out = np.zeros((M + 1,) + c.shape[1:], complex)
    for k in range(M):
        out[k + 1] = rot * out[k] + a * c[k] + b * c[k + 1]
    return out


def _as_field(F, grid=None, times=None) -> SpaceTimeField:
    if isinstance(F, SpaceTimeField):
        return F
    return SpaceTimeField(grid, times, F)


def schrodinger_duhamel_field(F: SpaceTimeField) -> SpaceTimeField:
    """``int_0^t e^{i(t-s) Delta} F(s) ds`` at every snapshot (prefactors left to the caller)."""
    g = F.grid
    I = mode_duhamel(fft_x(g, F.values), g.xi ** 2, F.dt)
    return SpaceTimeField(g, F.times, ifft_x(g, I))


def schrodinger_duhamel(F: SpaceTimeField, t_index: int) -> Field:
    """The same integral at the single snapshot ``t_index``."""
    if not 0 <= t_index < F.times.size:
        raise IndexError("t_index outside the time grid")
    g = F.grid
    if t_index == 0:
        return Field(g, np.zeros(g.N, complex))
    I = mode_duhamel(fft_x(g, F.values[: t_index + 1]), g.xi ** 2, F.dt)
    return Field(g, ifft_x(g, I[-1]))


def odd_forcing(grid: SpatialGrid, values: np.ndarray) -> np.ndarray:
    """Odd extension of the restriction to ``x >= 0`` (last axis); zero at both fixed points."""
    from .grid import reflect

    v = np.asarray(values)
    o = grid.origin
    pos = np.zeros_like(v)
    pos[..., o + 1:] = v[..., o + 1:]
    return pos - reflect(pos)


def _wave_source(u: SpaceTimeField, T: float, policy: str) -> np.ndarray:
    """Spectral coefficients of ``G = eta_T D^{-1} |u|^2``."""
    g = u.grid
    dens = np.abs(u.values) ** 2
    if policy == "odd":
        dens = odd_forcing(g, dens)
    elif policy != "whole":
        raise ValueError(f"unknown forcing policy {policy!r}")
    cut = eta_T(u.times, T)[:, None]
    return cut * fft_x(g, dens) / d_symbol(g.xi)


def kg_duhamel_npm(u: SpaceTimeField, sign: int, T: float, policy: str = "whole") -> SpaceTimeField:
    """``n_+- = -+ i int_0^t e^{+-i(t-s)D} G(u)(s) ds`` with ``G = eta_T D^{-1}|u|^2``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    g = u.grid
    I = mode_duhamel(_wave_source(u, T, policy), -sign * d_symbol(g.xi), u.dt)
    return SpaceTimeField(g, u.times, ifft_x(g, -sign * 1j * I))


def kg_duhamel_sum(u: SpaceTimeField, T: float, policy: str = "whole") -> tuple[np.ndarray, np.ndarray]:
    """``n_+ + n_-`` and its time derivative ``D (I_+ + I_-)``, both real."""
    g = u.grid
    src = _wave_source(u, T, policy)
    D = d_symbol(g.xi)
    Ip = mode_duhamel(src, -D, u.dt)
    Im = mode_duhamel(src, D, u.dt)
    total = ifft_x(g, -1j * (Ip - Im))
    deriv = ifft_x(g, D * (Ip + Im))
    return total.real, deriv.real


def trace_q(F: SpaceTimeField, times=None, T: float = 1.0, duhamel: SpaceTimeField | None = None) -> TimeSeries:
    """``q(t) = eta_T(t) [int_0^t e^{i(t-s) Delta} F ds](0)``."""
    D = schrodinger_duhamel_field(F) if duhamel is None else duhamel
    t = D.times if times is None else np.asarray(times, dtype=float)
    return TimeSeries(t, eta_T(t, T) * D.at_origin())


def trace_z(npm_sum, times, T: float) -> TimeSeries:
    """``z(t) = eta_T(t) [n_+ + n_-](0)``; real."""
    v = npm_sum.values if isinstance(npm_sum, SpaceTimeField) else np.asarray(npm_sum)
    grid_origin = v.shape[1] // 2
    t = np.asarray(times, dtype=float)
    z = eta_T(t, T) * v[:, grid_origin]
    return TimeSeries(t, np.real(z) if np.max(np.abs(np.imag(z)), initial=0) <= 1e-10 * max(
        np.max(np.abs(z), initial=0), 1.0) else z)


# --------------------------------------------------------------------------
# the fixed-point map


@dataclass
class LinearPart:
    """Linear evolution of the data, before the outer time cutoff."""

    u: np.ndarray
    n: np.ndarray
    nt: np.ndarray
    series: dict = field(default_factory=dict)


@dataclass
class GammaData:
    """Everything the map needs besides the current iterate."""

    grid: SpatialGrid
    times: np.ndarray
    T: float
    linear: LinearPart
    schrodinger_kernel: BoundaryKernel | None = None
    kg_kernel: BoundaryKernel | None = None
    potential: np.ndarray | None = None
    wave_policy: str = "whole"
    negligible: float = 1e-14
    kernel_cfg: BoundaryKernelConfig = field(default_factory=BoundaryKernelConfig)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.cut = eta_T(self.times, self.T)[:, None]
        self.cut_wide = eta(self.times)[:, None]

    def schrodinger(self) -> BoundaryKernel:
        if self.schrodinger_kernel is None:
            self.schrodinger_kernel = schrodinger_boundary_kernel(self.grid, self.times, self.kernel_cfg,
                                                                  x=self.grid.x)
        return self.schrodinger_kernel

    def kg(self) -> BoundaryKernel:
        if self.kg_kernel is None:
            self.kg_kernel = kg_boundary_kernel(self.grid, self.times, self.kernel_cfg, x=self.grid.x)
        return self.kg_kernel

    def vanishes(self, series: np.ndarray, scale: float) -> bool:
        return float(np.max(np.abs(series), initial=0.0)) <= self.negligible * max(scale, 1.0)


def apply_schrodinger_boundary(data: GammaData, series: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """``W_0^t(0, series)`` on the whole grid, or zeros when the series is negligible."""
    if data.vanishes(series, scale):
        return np.zeros((data.times.size, data.grid.N), complex)
    return data.schrodinger().apply(np.asarray(series, complex))


def apply_kg_boundary(data: GammaData, series: np.ndarray, scale: float = 1.0):
    """``V_0^t(0, series)`` and its time derivative (real parts)."""
    shape = (data.times.size, data.grid.N)
    if data.vanishes(series, scale):
        return np.zeros(shape), np.zeros(shape)
    K = data.kg()
    v = np.asarray(series, float)
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="boundary series does not vanish")
        val, der = K.apply_pair(v)
        return val.real, der.real


def gamma_map(state: KGSTrajectory, data: GammaData) -> KGSTrajectory:
    """One application of the fixed-point map to a trajectory on the local window.

    ``u <- eta_T [u_lin - i Duh(F) + i W_0(0, q)]`` with ``F = (n + m) u``, and
    ``n <- eta_T n_lin + eta (n_+ + n_-)/2 - eta_T V_0(0, z)/2``.  The time
    derivative drops the derivative of the cutoffs, which vanishes on ``[0, T]``.
    """
    g, times, T = data.grid, data.times, data.T
    pot = state.n if data.potential is None else state.n + data.potential
    F = SpaceTimeField(g, times, pot * state.u)
    duh = schrodinger_duhamel_field(F)
    q = trace_q(F, times, T, duhamel=duh).values
    scale = max(float(np.max(np.abs(duh.values), initial=0.0)), 1e-300)
    wq = apply_schrodinger_boundary(data, q, scale)
    u_new = data.cut * (data.linear.u - 1j * duh.values + 1j * wq)

    usf = SpaceTimeField(g, times, state.u)
    nsum, nsum_t = kg_duhamel_sum(usf, T, data.wave_policy)
    z = trace_z(nsum, times, T).values
    vz, vz_t = apply_kg_boundary(data, np.real(z), max(float(np.max(np.abs(nsum))), 1e-300))
    n_new = data.cut * data.linear.n + 0.5 * data.cut_wide * nsum - 0.5 * data.cut * vz
    nt_new = data.cut * data.linear.nt + 0.5 * data.cut_wide * nsum_t - 0.5 * data.cut * vz_t
    return KGSTrajectory(g, times, u_new, n_new, nt_new)
