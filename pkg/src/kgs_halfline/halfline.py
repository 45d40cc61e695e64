"""Data on the half-line: extensions to the whole line, restriction, time cutoffs."""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .grid import Field, SpatialGrid, sobolev_norm

__all__ = [
    "HalfLineFunction",
    "TimeSeries",
    "odd_extension",
    "zero_extension",
    "extend",
    "restrict",
    "chi_cutoff",
    "halfline_norm",
    "compatibility_check",
    "load_halfline_csv",
    "load_timeseries_csv",
    "ORIGIN_TOL",
]

ORIGIN_TOL = 1e-8
POLICIES = ("odd", "zero")


@dataclass(frozen=True)
class HalfLineFunction:
    """Samples at the grid nodes ``0, dx, ..., L`` (``N/2 + 1`` values)."""

    grid: SpatialGrid
    values: np.ndarray = field(repr=False)
    s: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (self.grid.N // 2 + 1,):
            raise ValueError(f"expected {self.grid.N // 2 + 1} half-line samples, got {v.shape}")
        v = v.astype(complex if np.iscomplexobj(v) else float, copy=True)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def x(self) -> np.ndarray:
        return self.grid.dx * np.arange(self.grid.N // 2 + 1)

    @property
    def at_origin(self):
        return self.values[0]

    @classmethod
    def from_function(cls, grid: SpatialGrid, func, s: float = 0.0) -> "HalfLineFunction":
        x = grid.dx * np.arange(grid.N // 2 + 1)
        return cls(grid, np.asarray(func(x)), s)

    def l2(self) -> float:
        """Trapezoid ``L^2(0, L)`` norm."""
        w = np.full(self.values.shape, self.grid.dx)
        w[0] = w[-1] = 0.5 * self.grid.dx
        return float(np.sqrt(np.sum(w * np.abs(self.values) ** 2)))


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled complex series ``t0, t0 + dt, ...``."""

    times: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values)
        if t.ndim != 1 or v.shape != t.shape:
            raise ValueError("times and values must be 1-D arrays of equal length")
        if t.size > 1:
            d = np.diff(t)
            if np.ptp(d) > 1e-9 * max(abs(d[0]), 1e-300) or d[0] <= 0:
                raise ValueError("time samples must be uniformly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("time series contains non-finite samples")
        v = v.astype(complex if np.iscomplexobj(v) else float, copy=True)
        t = t.copy()
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0]) if self.times.size > 1 else 0.0

    @classmethod
    def from_function(cls, times, func) -> "TimeSeries":
        times = np.asarray(times, dtype=float)
        return cls(times, np.asarray(func(times)))

    def __add__(self, other: "TimeSeries") -> "TimeSeries":
        _check_times(self, other)
        return TimeSeries(self.times, self.values + other.values)

    def __sub__(self, other: "TimeSeries") -> "TimeSeries":
        _check_times(self, other)
        return TimeSeries(self.times, self.values - other.values)

    def __mul__(self, c) -> "TimeSeries":
        return TimeSeries(self.times, c * np.asarray(self.values))

    __rmul__ = __mul__


def _check_times(a: TimeSeries, b: TimeSeries):
    if a.times.shape != b.times.shape or not np.allclose(a.times, b.times, rtol=0, atol=1e-12):
        raise ValueError("time series live on different time grids")


def _report_origin(f: HalfLineFunction):
    if abs(f.at_origin) > ORIGIN_TOL:
        warnings.warn(f"odd extension forces f(0)=0; discarded sample {f.at_origin:.3e}", RuntimeWarning,
                      stacklevel=3)


def odd_extension(f: HalfLineFunction) -> Field:
    """``F(x) = f(x)`` for ``x > 0`` and ``F(-x) = -F(x)``; ``F(0) = F(-L) = 0``."""
    _report_origin(f)
    grid = f.grid
    h = grid.N // 2
    out = np.zeros(grid.N, dtype=f.values.dtype)
    out[h + 1:] = f.values[1:h]
    out[1:h] = -f.values[h - 1:0:-1]
    return Field(grid, out)


def zero_extension(f: HalfLineFunction) -> Field:
    """``F = f`` on ``[0, L)`` and ``F = 0`` on ``[-L, 0)``."""
    if not -0.5 < f.s < 0.5:
        warnings.warn(f"zero extension is bounded on H^s only for |s| < 1/2 (s={f.s})", RuntimeWarning,
                      stacklevel=2)
    grid = f.grid
    h = grid.N // 2
    out = np.zeros(grid.N, dtype=f.values.dtype)
    out[h:] = f.values[:h]
    return Field(grid, out)


def extend(f: HalfLineFunction, policy: str) -> Field:
    if policy == "odd":
        return odd_extension(f)
    if policy == "zero":
        return zero_extension(f)
    raise ValueError(f"unknown extension policy {policy!r}; expected one of {POLICIES}")


def restrict(F: Field, s: float = 0.0) -> HalfLineFunction:
    """Samples at ``x >= 0``; the node ``x = L`` is the periodic image of ``-L``."""
    v = F.values
    return HalfLineFunction(F.grid, np.concatenate([v[F.grid.origin:], v[:1]]), s)


def chi_cutoff(g: TimeSeries) -> TimeSeries:
    """Multiply by the indicator of ``[0, inf)``."""
    return TimeSeries(g.times, np.where(g.times >= 0, g.values, 0))


def halfline_norm(f: HalfLineFunction, s: float, policy: str = "odd") -> float:
    """Upper proxy for the restriction norm: the ``H^s`` norm of one extension."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return sobolev_norm(extend(f, policy), s)


def compatibility_check(u0: HalfLineFunction, g: TimeSeries, s: float, tol: float = 1e-6) -> str:
    """``"warn"`` when ``s > 1/2`` and ``u0(0) != g(0)``; ``"pass"`` otherwise."""
    if s > 0.5:
        g0 = g.values[np.argmin(np.abs(g.times))]
        mismatch = abs(u0.at_origin - g0)
        if mismatch > tol:
            warnings.warn(f"compatibility u0(0) = g(0) violated by {mismatch:.3e} at s={s}", RuntimeWarning,
                          stacklevel=2)
            return "warn"
    return "pass"


def _read_columns(path) -> np.ndarray:
    rows = []
    with open(Path(path), newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                rows.append([float(c) for c in row])
            except ValueError:
                if rows:
                    raise
                continue  # header
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] not in (2, 3):
        raise ValueError(f"{path}: expected 2 or 3 numeric columns")
    return data


def _values(data: np.ndarray) -> np.ndarray:
    return data[:, 1] + 1j * data[:, 2] if data.shape[1] == 3 else data[:, 1]


def load_halfline_csv(path, grid: SpatialGrid, s: float = 0.0) -> HalfLineFunction:
    """Load ``x, value`` (or ``x, re, im``) and interpolate onto the half-line nodes.

    Values outside the sampled range are set to zero.
    """
    data = _read_columns(path)
    x = grid.dx * np.arange(grid.N // 2 + 1)
    v = _values(data)
    order = np.argsort(data[:, 0])
    xs, v = data[order, 0], v[order]
    out = np.interp(x, xs, v.real, left=0.0, right=0.0)
    if np.iscomplexobj(v):
        out = out + 1j * np.interp(x, xs, v.imag, left=0.0, right=0.0)
    return HalfLineFunction(grid, out, s)


def load_timeseries_csv(path, times=None) -> TimeSeries:
    """Load ``t, value`` (or ``t, re, im``); resample onto ``times`` when given."""
    data = _read_columns(path)
    v = _values(data)
    if times is None:
        return TimeSeries(data[:, 0], v)
    times = np.asarray(times, dtype=float)
    out = np.interp(times, data[:, 0], v.real, left=0.0, right=0.0)
    if np.iscomplexobj(v):
        out = out + 1j * np.interp(times, data[:, 0], v.imag, left=0.0, right=0.0)
    return TimeSeries(times, out)
