"""Solution containers: single-time state and space-time trajectories."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import Field, SpatialGrid, d_symbol, fft_x, ifft_x

__all__ = ["SpaceTimeField", "KGSState", "KGSTrajectory", "REAL_STATE_TOL"]

REAL_STATE_TOL = 1e-8


@dataclass(frozen=True)
class SpaceTimeField:
    """Snapshots ``values[k]`` of a field at ``times[k]`` (uniform, starting at 0)."""

    grid: SpatialGrid
    times: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values)
        if v.ndim != 2 or v.shape != (t.size, self.grid.N):
            raise ValueError(f"expected values of shape {(t.size, self.grid.N)}, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("space-time field contains non-finite values")
        if t.size > 2 and not np.allclose(np.diff(t), t[1] - t[0], rtol=1e-9, atol=1e-12):
            raise ValueError("snapshot times must be uniform")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0]) if self.times.size > 1 else 0.0

    def snapshot(self, k: int) -> Field:
        return Field(self.grid, self.values[k])

    def at_origin(self) -> np.ndarray:
        return self.values[:, self.grid.origin]


def _plus_minus(grid: SpatialGrid, n: np.ndarray, nt: np.ndarray):
    w = 1j * ifft_x(grid, fft_x(grid, nt) / d_symbol(grid.xi))
    return n - w, n + w


@dataclass(frozen=True)
class KGSState:
    """``(u, N_+, N_-)`` at one time, with ``n = (N_+ + N_-)/2`` and ``n_t = iD(N_+ - N_-)/2``."""

    u: Field
    n_plus: Field
    n_minus: Field

    @classmethod
    def from_wave(cls, u: Field, n: Field, nt: Field) -> "KGSState":
        p, m = _plus_minus(u.grid, n.values, nt.values)
        return cls(u, Field(u.grid, p), Field(u.grid, m))

    @property
    def n(self) -> Field:
        return Field(self.u.grid, (0.5 * (self.n_plus.values + self.n_minus.values)).real)

    @property
    def nt(self) -> Field:
        g = self.u.grid
        c = fft_x(g, self.n_plus.values - self.n_minus.values)
        return Field(g, ifft_x(g, 0.5j * d_symbol(g.xi) * c).real)

    def realness(self) -> float:
        """Largest imaginary residue of ``n`` and ``n_t`` before the real part is taken."""
        g = self.u.grid
        n = 0.5 * (self.n_plus.values + self.n_minus.values)
        nt = ifft_x(g, 0.5j * d_symbol(g.xi) * fft_x(g, self.n_plus.values - self.n_minus.values))
        return float(max(np.max(np.abs(n.imag)), np.max(np.abs(nt.imag))))


@dataclass
class KGSTrajectory:
    """``u`` (complex), ``n`` and ``n_t`` (real) on a shared uniform time grid."""

    grid: SpatialGrid
    times: np.ndarray
    u: np.ndarray
    n: np.ndarray
    nt: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        shape = (self.times.size, self.grid.N)
        self.u = np.asarray(self.u, dtype=complex).reshape(shape)
        self.n = np.asarray(self.n, dtype=float).reshape(shape)
        self.nt = np.asarray(self.nt, dtype=float).reshape(shape)

    @classmethod
    def zeros(cls, grid: SpatialGrid, times) -> "KGSTrajectory":
        times = np.asarray(times, dtype=float)
        z = np.zeros((times.size, grid.N))
        return cls(grid, times, z.astype(complex), z, z.copy())

    def state(self, k: int) -> KGSState:
        return KGSState.from_wave(Field(self.grid, self.u[k]), Field(self.grid, self.n[k]),
                                  Field(self.grid, self.nt[k]))

    def rows(self, sl) -> "KGSTrajectory":
        return KGSTrajectory(self.grid, self.times[sl], self.u[sl], self.n[sl], self.nt[sl])

    @property
    def n_plus(self) -> np.ndarray:
        return _plus_minus(self.grid, self.n, self.nt)[0]

    @property
    def n_minus(self) -> np.ndarray:
        return _plus_minus(self.grid, self.n, self.nt)[1]

    def halfline(self, name: str) -> np.ndarray:
        """Restriction of ``u``, ``n`` or ``nt`` to the nodes ``x >= 0``."""
        return getattr(self, name)[:, self.grid.origin:]

    def sup_distance(self, other: "KGSTrajectory") -> float:
        return float(max(np.max(np.abs(self.u - other.u)), np.max(np.abs(self.n - other.n)),
                         np.max(np.abs(self.nt - other.nt))))

    def sup_size(self) -> float:
        return float(max(np.max(np.abs(self.u)), np.max(np.abs(self.n)), np.max(np.abs(self.nt))))
