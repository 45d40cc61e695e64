"""Discrete Bourgain norms on space-time fields and an ensemble harness for the estimates.

The time variable ``tau`` is oriented so that free Schrodinger waves
``e^{it Delta} u0`` sit on ``tau = xi^2``; a field ``e^{-i c t}`` sits at ``tau = c``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .cutoffs import eta, eta_T
from .duhamel import mode_duhamel
from .grid import SpatialGrid, d_symbol, fft_x, ifft_x, japanese, make_grid
from .state import SpaceTimeField

__all__ = [
    "BourgainWeight",
    "space_time_transform",
    "xsb_norm",
    "ysb_norm",
    "bilinear_ratio_wave_target",
    "bilinear_ratio_schrodinger_target",
    "EnsembleParams",
    "ensemble_estimate_suite",
    "UNDEFINED",
]

KINDS = ("schrodinger", "wave_plus", "wave_minus", "wave_inf")
UNDEFINED = None


@dataclass(frozen=True)
class BourgainWeight:
    kind: str
    s: float
    b: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}")

    def __call__(self, xi: np.ndarray, tau: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi)[None, :]
        tau = np.asarray(tau)[:, None]
        space = japanese(xi) ** self.s
        if self.kind == "schrodinger":
            return space * japanese(tau - xi ** 2) ** self.b
        wp = space * japanese(tau - xi) ** self.b
        wm = space * japanese(tau + xi) ** self.b
        if self.kind == "wave_plus":
            return wp
        if self.kind == "wave_minus":
            return wm
        return (wp ** -2 + wm ** -2) ** -0.5


def space_time_transform(f: SpaceTimeField) -> tuple[np.ndarray, np.ndarray, float]:
    """Coefficients ``C[tau, xi]``, the ``tau`` grid, and the Plancherel factor ``1/(2L P)``."""
    g = f.grid
    dt = f.dt
    M = f.times.size
    spatial = fft_x(g, f.values)
    tau = -2 * np.pi * np.fft.fftfreq(M, dt)
    C = dt * np.fft.fft(spatial, axis=0)
    return C, tau, 1.0 / (2 * g.L * M * dt)


def _check_localized(f: SpaceTimeField, label: str):
    v = np.abs(f.values)
    peak = v.max()
    if peak > 0 and max(v[0].max(), v[-1].max()) > 1e-8 * peak:
        warnings.warn(f"{label}: field is not time-localized inside the window", RuntimeWarning, stacklevel=3)


def _weighted(f: SpaceTimeField, w: BourgainWeight) -> float:
    C, tau, pl = space_time_transform(f)
    return float(np.sqrt(pl * np.sum((w(f.grid.xi, tau) * np.abs(C)) ** 2)))


def xsb_norm(f: SpaceTimeField, s: float, b: float) -> float:
    """``|| <xi>^s <tau - xi^2>^b f_hat ||``."""
    _check_localized(f, "xsb_norm")
    return _weighted(f, BourgainWeight("schrodinger", s, b))


def ysb_norm(f: SpaceTimeField, s: float, b: float, kind: str = "inf") -> float:
    """Wave norm; ``kind`` is ``"plus"``, ``"minus"`` or ``"inf"``.

    ``"inf"`` uses the pointwise-optimal split, whose weight is
    ``(w_+^-2 + w_-^-2)^(-1/2)``.
    """
    _check_localized(f, "ysb_norm")
    name = {"plus": "wave_plus", "minus": "wave_minus", "inf": "wave_inf"}.get(kind, kind)
    return _weighted(f, BourgainWeight(name, s, b))


def _ratio(num: float, den: float):
    if den == 0 or not math.isfinite(den):
        return UNDEFINED
    return num / den


def bilinear_ratio_wave_target(u: SpaceTimeField, v: SpaceTimeField, s0: float, s1: float, a: float, b: float):
    """``||u conj(v)||_{Y^{s1+a,-b}} / (||u||_{X^{s0,b}} ||v||_{X^{s0,b}})``; ``None`` when undefined."""
    if not a < 2 * s0 - s1 + 2 * b - 0.5:
        warnings.warn("smoothing index outside the admissible range for the wave-target estimate",
                      RuntimeWarning, stacklevel=2)
    prod = SpaceTimeField(u.grid, u.times, u.values * np.conj(v.values))
    return _ratio(ysb_norm(prod, s1 + a, -b, "inf"), xsb_norm(u, s0, b) * xsb_norm(v, s0, b))


def bilinear_ratio_schrodinger_target(u: SpaceTimeField, n: SpaceTimeField, s0: float, s1: float, a: float,
                                      b: float):
    """``||u n||_{X^{s0+a,-b}} / (||u||_{X^{s0,b}} ||n||_{Y^{s1,b}})``; ``None`` when undefined."""
    if not a < s1 + 2 * b - 0.5:
        warnings.warn("smoothing index outside the admissible range for the Schrodinger-target estimate",
                      RuntimeWarning, stacklevel=2)
    prod = SpaceTimeField(u.grid, u.times, u.values * n.values)
    return _ratio(xsb_norm(prod, s0 + a, -b), xsb_norm(u, s0, b) * ysb_norm(n, s1, b, "inf"))


# --------------------------------------------------------------------------
# ensemble harness


@dataclass(frozen=True)
class EnsembleParams:
    sizes: tuple = (64, 128, 256)
    L: float = 4 * math.pi
    decay: float = 1.0
    band_fraction: float = 0.25
    window: float = 2.5
    s0: float = 0.0
    s1: float = 0.0
    b: float = 0.4
    a_wave: float = 0.2
    a_schrodinger: float = 0.2
    b1: float = 0.4
    b2: float = 0.6
    T_short: float = 0.5
    b_short: float = 1.0 / 3.0
    loc_b1: float = 0.1
    loc_b2: float = 0.4

    def to_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def _band(params: EnsembleParams) -> int:
    return int(params.band_fraction * max(params.sizes))


def _random_profile(rng: np.random.Generator, grid: SpatialGrid, K: int, Kmax: int, decay: float,
                    real: bool = False) -> np.ndarray:
    """Band-limited random field with ``|c_k| ~ <xi_k>^-decay`` on modes ``|k| <= K``.

    Coefficients are drawn for ``|k| <= Kmax`` in a fixed order, so a member is
    the same function on every grid fine enough to carry it.
    """
    ks = np.arange(-Kmax, Kmax + 1)
    z = rng.standard_normal(ks.size) + 1j * rng.standard_normal(ks.size)
    xi = np.pi * ks / grid.L
    c = z * japanese(xi) ** -decay
    c[np.abs(ks) > K] = 0
    v = np.exp(1j * np.outer(grid.x, xi)) @ c / (2 * grid.L)
    return v.real if real else v


def _time_grid(params: EnsembleParams, grid: SpatialGrid, K: int) -> np.ndarray:
    xi_b = np.pi * K / grid.L
    tau_max = 2 * xi_b ** 2 + 4 * xi_b + 40.0
    dt = np.pi / tau_max
    M = int(2 ** math.ceil(math.log2(2 * params.window / dt)))
    return -params.window + (2 * params.window / M) * np.arange(M)


def _free(grid, profile, times, symbol, cutoff) -> SpaceTimeField:
    c = fft_x(grid, profile)
    vals = ifft_x(grid, np.exp(-1j * np.outer(times, symbol)) * c) * cutoff[:, None]
    return SpaceTimeField(grid, times, vals)


def _duhamel_both_ways(grid, F: SpaceTimeField, omega) -> np.ndarray:
    """``int_0^t e^{-i omega (t-s)} F_hat(s) ds`` for ``t`` of either sign."""
    t = F.times
    dt = F.dt
    i0 = int(np.argmin(np.abs(t)))
    C = fft_x(grid, F.values)
    fwd = mode_duhamel(C[i0:], omega, dt)
    bwd = -mode_duhamel(C[i0::-1], -omega, dt)
    out = np.concatenate([bwd[::-1][:-1], fwd], axis=0)
    return ifft_x(grid, out)


def _member(rng, grid, times, K, Kmax, p: EnsembleParams) -> dict:
    xi = grid.xi
    cut = eta(times)
    f1 = _random_profile(rng, grid, K, Kmax, p.decay)
    f2 = _random_profile(rng, grid, K, Kmax, p.decay)
    f3 = _random_profile(rng, grid, K, Kmax, p.decay)
    phi = _random_profile(rng, grid, K, Kmax, p.decay + p.s1)
    off = rng.uniform(-3.0, 3.0)
    u = _free(grid, f1, times, xi ** 2, cut)
    v = _free(grid, f2, times, xi ** 2, cut)
    wave = _free(grid, phi, times, -d_symbol(xi), cut)
    # forcing with a resonant and a non-resonant component
    F = SpaceTimeField(grid, times, u.values + cut[:, None] * np.exp(-1j * off * times)[:, None]
                       * ifft_x(grid, fft_x(grid, f3))[None, :])
    duh = _duhamel_both_ways(grid, F, xi ** 2) * cut[:, None]
    duh_f = SpaceTimeField(grid, times, duh)
    short_u = _free(grid, f1, times, xi ** 2, eta_T(times, p.T_short))
    short_w = _free(grid, phi, times, -d_symbol(xi), eta_T(times, p.T_short))
    loc = SpaceTimeField(grid, times, eta_T(times, p.T_short)[:, None] * F.values)

    def hs(f, s):
        return float(np.sqrt(np.sum(japanese(xi) ** (2 * s) * np.abs(fft_x(grid, f)) ** 2) / (2 * grid.L)))

    Tb = p.T_short
    out = {
        "free_schrodinger": _ratio(xsb_norm(u, p.s0, p.b), hs(f1, p.s0)),
        "duhamel_schrodinger": _ratio(xsb_norm(duh_f, p.s0, p.b2),
                                      xsb_norm(F, p.s0, -p.b1)),
        "time_localization": _ratio(xsb_norm(loc, p.s0, p.loc_b1),
                                    Tb ** (p.loc_b2 - p.loc_b1) * xsb_norm(F, p.s0, p.loc_b2)),
        "short_time_schrodinger": _ratio(xsb_norm(short_u, 0.0, p.b_short), Tb ** (0.5 - p.b_short) * hs(f1, 0.0)),
        "short_time_wave": _ratio(ysb_norm(short_w, p.s1, p.b_short, "inf"),
                                  Tb ** (0.5 - p.b_short) * hs(phi, p.s1)),
        "bilinear_wave_target": bilinear_ratio_wave_target(u, v, p.s0, p.s1, p.a_wave, p.b),
        "bilinear_schrodinger_target": bilinear_ratio_schrodinger_target(u, wave, p.s0, p.s1, p.a_schrodinger,
                                                                         p.b),
    }
    return out


def ensemble_estimate_suite(seed: int, count: int, params: EnsembleParams | None = None) -> dict:
    """Max and median ratios per estimate and grid size, plus the refinement slope.

    The slope is the least-squares slope of the maximum ratio against ``log N``.
    """
    if count < 10:
        raise ValueError("the ensemble needs at least 10 members")
    p = params or EnsembleParams()
    Kmax = _band(p)
    per_size = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for N in p.sizes:
            grid = make_grid(p.L, N)
            K = int(p.band_fraction * N)
            times = _time_grid(p, grid, K)
            rows = [_member(np.random.default_rng([seed, m]), grid, times, K, Kmax, p) for m in range(count)]
            stats = {}
            for name in rows[0]:
                vals = sorted(r[name] for r in rows if r[name] is not None)
                stats[name] = {"max": float(vals[-1]), "median": float(np.median(vals)), "N": N,
                               "defined": len(vals), "time_samples": int(times.size)}
            per_size[N] = stats
    names = sorted(per_size[p.sizes[0]])
    logN = np.log(np.asarray(p.sizes, dtype=float))
    estimates = {}
    for name in names:
        mx = np.array([per_size[N][name]["max"] for N in p.sizes])
        slope = float(np.polyfit(logN, mx, 1)[0]) if len(p.sizes) > 1 else 0.0
        log_slope = float(np.polyfit(logN, np.log(mx), 1)[0]) if len(p.sizes) > 1 else 0.0
        estimates[name] = {
            "by_N": [per_size[N][name] for N in p.sizes],
            "slope_vs_logN": slope,
            "loglog_slope": log_slope,
            "refinement_stable": bool(slope <= 0.1),
        }
    return {"seed": seed, "count": count, "params": p.to_dict(), "estimates": estimates,
            "all_stable": all(e["refinement_stable"] for e in estimates.values())}
