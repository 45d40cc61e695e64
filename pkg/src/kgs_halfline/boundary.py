"""Half-line boundary operators for the linear Klein-Gordon and Schrodinger problems.

Both operators are inverse Laplace transforms of the boundary series pushed onto
the imaginary axis.  Every one of them has the generic form

    out(x, t) = sum_j  exp(i nu_j t) * c_j * h_hat(nu_j) * X_j(x),

where ``h_hat`` is the transform of the one-sided series, ``nu_j`` are
temporal frequencies attached to quadrature nodes, ``c_j`` folds in the
quadrature weight and Jacobian and ``X_j(x)`` is the spatial profile (an
oscillation ``exp(i mu x)`` or an evanescent ``exp(-a x) rho(a x)``).
:class:`BoundaryKernel` stores that triple and applies it with two matrix
products, which is what makes repeated Picard applications cheap.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import math

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import sici

from .cutoffs import rho
from .grid import SpatialGrid, d_symbol, japanese
from .halfline import TimeSeries

__all__ = [
    "BoundaryKernelConfig",
    "BoundaryKernel",
    "halfline_time_transform",
    "filon_transform",
    "kg_boundary_A",
    "kg_boundary_B",
    "kg_boundary_kernel",
    "kg_boundary_V0",
    "schrodinger_boundary_kernel",
    "schrodinger_boundary_W0",
    "trace_p",
    "trace_r",
    "rho",
    "dump_kernel_csv",
]


@dataclass(frozen=True)
class BoundaryKernelConfig:
    """Quadrature settings for the boundary integrals.

    ``n_A`` is the node count of the evanescent ``|mu| < 1`` integral (in the
    ``mu = sin(theta)`` variable).  ``n_B`` fixes the node count per half-axis
    of the oscillatory integrals; ``None`` sizes the panels from the largest
    phase rate so that each 16-point panel spans at most ``phase_per_panel``
    radians.  ``xi_factor`` sets the KG truncation ``Xi_max`` relative to the
    largest grid frequency, ``schrodinger_factor`` the spatial cut for the
    Schrodinger integral (temporal cut ``(factor * xi_grid)**2``).
    """

    n_A: int = 1024
    n_B: int | None = None
    xi_factor: float = 2.0
    schrodinger_factor: float = 1.0
    xi_max: float | None = None
    panel_order: int = 16
    refine_levels: int = 8
    phase_per_panel: float = 3.0 * np.pi
    cache_limit: int = 6_000_000
    tail_warn: float = 1e-3
    tail_correction: bool = True

    def __post_init__(self):
        if self.n_A < 16:
            raise ValueError("n_A must be at least 16")
        if self.n_B is not None and self.n_B < 16:
            raise ValueError("n_B must be at least 16")
        if self.xi_factor < 1 or self.schrodinger_factor <= 0:
            raise ValueError("truncation factors must cover the grid band")

    def kg_cut(self, grid: SpatialGrid) -> float:
        xi = self.xi_max if self.xi_max is not None else self.xi_factor * grid.xi_max
        if xi < grid.xi_max:
            raise ValueError(f"Xi_max={xi} is below the largest grid frequency {grid.xi_max}")
        return float(xi)

    def schrodinger_cut(self, grid: SpatialGrid) -> float:
        return float(self.schrodinger_factor * grid.xi_max)


# --------------------------------------------------------------------------
# quadrature helpers


def _gl(order):
    s, w = leggauss(order)
    return s, w


def composite_gl(edges: np.ndarray, order: int = 16) -> tuple[np.ndarray, np.ndarray]:
    s, w = _gl(order)
    a, b = edges[:-1, None], edges[1:, None]
    half = 0.5 * (b - a)
    nodes = (a + b) / 2 + half * s
    weights = half * w
    return nodes.ravel(), weights.ravel()


def graded_edges(length: float, rate0: float, rate1: float, budget: float, refine: int,
                 n_panels: int | None = None) -> np.ndarray:
    """Panel edges on ``[0, length]``.

    Panels widen or shrink so that the local phase rate ``rate0 + rate1 * s``
    times the panel width stays below ``budget``; the first panel is split
    dyadically ``refine`` times toward 0.
    """
    if n_panels is not None:
        edges = np.linspace(0.0, length, n_panels + 1)
    else:
        edges = [0.0]
        s = 0.0
        while s < length:
            s = min(length, s + budget / (rate0 + rate1 * s))
            edges.append(s)
        edges = np.asarray(edges)
    first = edges[1]
    fine = first * 2.0 ** -np.arange(refine, 0, -1)
    return np.concatenate([[0.0], fine, edges[1:]])


# --------------------------------------------------------------------------
# time transform


def _filon_coeffs(theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``a = int_0^1 e^{-i th s}(1 - s) ds`` and ``b = int_0^1 e^{-i th s} s ds``."""
    theta = np.asarray(theta, dtype=float)
    a = np.empty(theta.shape, complex)
    b = np.empty(theta.shape, complex)
    small = np.abs(theta) < 0.3
    z = -1j * theta[small]
    # series: int s^m e^{zs} = sum z^n / (n! (n+m+1))
    term = np.ones_like(z)
    e0 = np.zeros_like(z)
    e1 = np.zeros_like(z)
    for n in range(18):
        e0 += term / (n + 1)
        e1 += term / (n + 2)
        term = term * z / (n + 1)
    a[small] = e0 - e1
    b[small] = e1
    th = theta[~small]
    em = np.exp(-1j * th)
    E0 = (1 - em) / (1j * th)
    E1 = (em - E0) / (-1j * th)
    a[~small] = E0 - E1
    b[~small] = E1
    return a, b


def _simpson_coeffs(theta: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Weights of the quadratic through ``s = 0, 1, 2`` against ``e^{-i th s}`` on ``[0, 2]``."""
    theta = np.asarray(theta, dtype=float)
    m = [np.empty(theta.shape, complex) for _ in range(3)]
    small = np.abs(theta) < 0.5
    z = -1j * theta[small]
    term = np.ones_like(z)
    acc = [np.zeros_like(z) for _ in range(3)]
    for n in range(30):
        for j in range(3):
            acc[j] += term * 2.0 ** (n + j + 1) / (n + j + 1)
        term = term * z / (n + 1)
    for j in range(3):
        m[j][small] = acc[j]
    th = theta[~small]
    iz = 1j * th
    e2 = np.exp(-2j * th)
    prev = (1 - e2) / iz
    m[0][~small] = prev
    for j in (1, 2):
        prev = -(2.0 ** j) * e2 / iz + j * prev / iz
        m[j][~small] = prev
    m0, m1, m2 = m
    return (m2 - 3 * m1 + 2 * m0) / 2, 2 * m1 - m2, (m2 - m1) / 2


def _one_sided(h: TimeSeries) -> tuple[np.ndarray, np.ndarray]:
    keep = h.times >= -1e-12 * max(h.dt, 1.0)
    return h.times[keep], np.asarray(h.values)[keep]


def filon_transform(times: np.ndarray, values: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """``int e^{-i mu t} h(t) dt`` for the piecewise-linear interpolant of the samples.

    The quadrature is the trapezoid rule with the oscillatory factor integrated
    exactly; at ``mu = 0`` it coincides with the plain trapezoid rule.
    ``values`` may be ``(M,)`` or ``(M, K)`` for ``K`` series at once.
    """
    mu = np.atleast_1d(np.asarray(mu, dtype=float))
    dt = times[1] - times[0]
    a, b = _filon_coeffs(mu * dt)
    out = np.zeros((mu.size,) + np.shape(values)[1:], complex)
    v = np.asarray(values)
    chunk = max(1, 2_000_000 // max(times.size, 1))
    for lo in range(0, mu.size, chunk):
        sl = slice(lo, lo + chunk)
        P = np.exp(-1j * np.outer(mu[sl], times[:-1]))
        s0 = P @ v[:-1]
        s1 = P @ v[1:]
        shape = (-1,) + (1,) * (v.ndim - 1)
        out[sl] = dt * (a[sl].reshape(shape) * s0 + b[sl].reshape(shape) * s1)
    return out


def halfline_time_transform(h: TimeSeries, mu):
    """Transform of ``chi * h``: ``int_0^inf e^{-i mu t} h(t) dt`` over the sampled support."""
    t, v = _one_sided(h)
    if t.size < 2:
        return np.zeros(np.shape(mu), complex) if np.ndim(mu) else 0j
    out = filon_transform(t, v, mu)
    return out if np.ndim(mu) else complex(out[0])


# --------------------------------------------------------------------------
# analytic tail of the KG oscillatory integral


def endpoint_derivatives(times, values, order: int = 6, window: int = 24) -> np.ndarray:
    """``h(0), h'(0), ..., h^{(order-1)}(0)`` from a polynomial fit to the first samples."""
    t = np.asarray(times[:window], dtype=float) - times[0]
    v = np.asarray(values[:window])
    deg = min(order + 2, t.size - 1)
    scale = t[-1] if t[-1] > 0 else 1.0
    coef = np.polynomial.polynomial.polyfit(t / scale, v, deg)
    coef = np.concatenate([coef, np.zeros(max(0, order - coef.size), coef.dtype)])
    return np.array([coef[k] * math.factorial(k) / scale ** k for k in range(order)])


def _tail_coeffs(a, t, derivative=False):
    """Coefficients of ``mu^{-j}``, ``j = 0..7``, of the ``mu > Xi`` integrand over ``exp(i mu (x - t))``.

    Generated by a symbolic series expansion in ``1/mu``; ``a[k] = h^{(k)}(0)``.
    """
    a0, a1, a2, a3, a4, a5 = a
    if not derivative:
        return [
            0 + 0 * t,
            1j*a0 + 0 * t,
            (1/2)*a0*t - a1 + 0 * t,
            1j*(-1/8*a0*t**2 - a0 + (1/2)*a1*t - a2) + 0 * t,
            -1/48*a0*t**3 - 5/8*a0*t + (1/8)*a1*t**2 + (3/2)*a1 - 1/2*a2*t + a3 + 0 * t,
            1j*((1/384)*a0*t**4 + (3/16)*a0*t**2 + a0 - 1/48*a1*t**3 - 7/8*a1*t + (1/8)*a2*t**2 + 2*a2 - 1/2*a3*t + a4) + 0 * t,
            (1/3840)*a0*t**5 + (7/192)*a0*t**3 + (11/16)*a0*t - 1/384*a1*t**4 - 1/4*a1*t**2 - 15/8*a1 + (1/48)*a2*t**3 + (9/8)*a2*t - 1/8*a3*t**2 - 5/2*a3 + (1/2)*a4*t - a5 + 0 * t,
            1j*(-1/46080*a0*t**6 - 1/192*a0*t**4 - 29/128*a0*t**2 - a0 + (1/3840)*a1*t**5 + (3/64)*a1*t**3 + (19/16)*a1*t - 1/384*a2*t**4 - 5/16*a2*t**2 - 3*a2 + (1/48)*a3*t**3 + (11/8)*a3*t - 1/8*a4*t**2 - 3*a4 + (1/2)*a5*t) + 0 * t,
        ]
    return [
        a0 + 0 * t,
        1j*(-1/2*a0*t + a1) + 0 * t,
        -1/8*a0*t**2 - 1/2*a0 + (1/2)*a1*t - a2 + 0 * t,
        1j*((1/48)*a0*t**3 + (3/8)*a0*t - 1/8*a1*t**2 - a1 + (1/2)*a2*t - a3) + 0 * t,
        (1/384)*a0*t**4 + (1/8)*a0*t**2 + (3/8)*a0 - 1/48*a1*t**3 - 5/8*a1*t + (1/8)*a2*t**2 + (3/2)*a2 - 1/2*a3*t + a4 + 0 * t,
        1j*(-1/3840*a0*t**5 - 5/192*a0*t**3 - 5/16*a0*t + (1/384)*a1*t**4 + (3/16)*a1*t**2 + a1 - 1/48*a2*t**3 - 7/8*a2*t + (1/8)*a3*t**2 + 2*a3 - 1/2*a4*t + a5) + 0 * t,
        (1/46080)*(-a0*t**6 - 180*a0*t**4 - 5400*a0*t**2 - 14400*a0 + 12*a1*t**5 + 1680*a1*t**3 + 31680*a1*t - 120*a2*t**4 - 11520*a2*t**2 - 86400*a2 + 960*a3*t**3 + 51840*a3*t - 5760*a4*t**2 - 115200*a4 + 23040*a5*t) + 0 * t,
        1j*((1/645120)*a0*t**7 + (7/15360)*a0*t**5 + (7/256)*a0*t**3 + (35/128)*a0*t - 1/46080*a1*t**6 - 1/192*a1*t**4 - 29/128*a1*t**2 - a1 + (1/3840)*a2*t**5 + (3/64)*a2*t**3 + (19/16)*a2*t - 1/384*a3*t**4 - 5/16*a3*t**2 - 3*a3 + (1/48)*a4*t**3 + (11/8)*a4*t - 1/8*a5*t**2 - 3*a5) + 0 * t,
    ]


def tail_integrals(s: np.ndarray, cut: float, jmax: int = 5, floor: float = 0.0) -> list:
    """``J_j(s) = int_cut^inf exp(i mu s) mu^{-j} d mu`` for ``j = 1..jmax`` (index 0 unused)."""
    s = np.asarray(s, dtype=float)
    a = np.abs(s)
    if floor > 0:
        a = np.maximum(a, floor)
    safe = np.where(a > 0, a, 1.0)
    si, ci = sici(cut * safe)
    J1 = np.where(a > 0, -ci + 1j * np.sign(s) * (np.pi / 2 - si), np.inf)
    out = [None, J1]
    sJ = np.where(a > 0, s * J1, 0.0)
    ph = np.exp(1j * cut * s)
    for j in range(2, jmax + 1):
        Jj = (cut ** (1 - j) * ph + 1j * sJ) / (j - 1)
        out.append(Jj)
        sJ = s * Jj
    return out


class KGTail:
    """Asymptotic correction for the part ``|mu| > Xi_max`` of the KG ``B`` integral.

    Beyond the cut the transform of a series smooth on ``(0, inf)`` follows
    ``h_hat(nu) ~ sum_k h^{(k)}(0) / (i nu)^{k+1}``; expanding the integrand in
    ``1 / mu`` leaves integrals of ``exp(i mu s) mu^{-j}`` known in closed form.
    """

    def __init__(self, times, xs, cut, jmax: int = 7):
        self.times = np.asarray(times, dtype=float)
        self.xs = np.asarray(xs, dtype=float)
        self.cut = float(cut)
        self.jmax = jmax
        self._floor = 0.25 * (self.times[1] - self.times[0])
        self._J = None

    def _integrals(self):
        if self._J is None:
            s = self.xs[None, :] - self.times[:, None]
            Jp = tail_integrals(s, self.cut, self.jmax, self._floor)
            Jm = tail_integrals(-s, self.cut, self.jmax, self._floor)
            self._J = [None] + [Jp[j] + (-1) ** j * Jm[j] for j in range(1, self.jmax + 1)]
        return self._J

    def evaluate(self, values, derivative: bool = False) -> np.ndarray:
        a = endpoint_derivatives(self.times, values)
        if not derivative and abs(a[0]) > 1e-6 * max(np.max(np.abs(values)), 1e-300):
            warnings.warn("boundary series does not vanish at t=0; tail correction is log-singular on x=t",
                          RuntimeWarning, stacklevel=3)
        t = self.times[:, None]
        J = self._integrals()
        c = _tail_coeffs(a, t, derivative)
        out = np.zeros(J[1].shape, complex)
        for j in range(1, self.jmax + 1):
            out += c[j] * J[j]
        return out / (2 * np.pi)


# --------------------------------------------------------------------------
# generic kernel


class BoundaryKernel:
    """Linear map from a boundary series on ``times`` to a space-time field.

    Parameters
    ----------
    times : uniform sample times (start at 0) shared by the series and the output
    nu : temporal frequencies of the quadrature nodes
    coef : quadrature weights including Jacobians and the ``1/(2 pi)``-type prefactor
    profile : ``(nodes, nx)`` spatial profiles at the output abscissae
    """

    def __init__(self, times, nu, coef, profile, x, cache_limit=6_000_000, name="boundary", tail=None,
                 rule: str = "simpson"):
        self.tail = tail
        self.rule = rule
        self.times = np.asarray(times, dtype=float)
        self.nu = np.asarray(nu, dtype=float)
        self.coef = np.asarray(coef)
        self.profile = np.asarray(profile)
        self.x = np.asarray(x, dtype=float)
        self.name = name
        dt = self.times[1] - self.times[0]
        a, b = _filon_coeffs(self.nu * dt)
        self._a, self._b, self._dt = a, b, dt
        if rule == "simpson":
            self._w = _simpson_coeffs(self.nu * dt)
        elif rule != "linear":
            raise ValueError(f"unknown transform rule {rule!r}")
        self._E = None
        if self.times.size * self.nu.size <= cache_limit:
            self._E = np.exp(1j * np.outer(self.times, self.nu))

    @property
    def n_nodes(self) -> int:
        return self.nu.size

    def _rows(self, sl):
        if self._E is not None:
            return self._E[sl]
        return np.exp(1j * np.outer(self.times[sl], self.nu))

    def transform(self, values) -> np.ndarray:
        """Series transform at the node frequencies, shape ``(nodes,)`` or ``(nodes, K)``."""
        v = np.asarray(values)
        if v.shape[0] != self.times.size:
            raise ValueError("series length does not match the kernel time grid")
        M = self.times.size - 1
        shape = (-1,) + (1,) * (v.ndim - 1)
        if self.rule == "linear" or M < 2:
            s0, s1 = self._sums(v, np.arange(M), (0, 1))
            return self._dt * (self._a.reshape(shape) * s0 + self._b.reshape(shape) * s1)
        P = M // 2
        w0, w1, w2 = (w.reshape(shape) for w in self._w)
        s0, s1, s2 = self._sums(v, 2 * np.arange(P), (0, 1, 2))
        out = self._dt * (w0 * s0 + w1 * s1 + w2 * s2)
        if M % 2:
            # trailing single interval by the linear rule
            e = self._rows(slice(M - 1, M))[0].conj().reshape(shape)
            out += self._dt * e * (self._a.reshape(shape) * v[M - 1] + self._b.reshape(shape) * v[M])
        return out

    def _sums(self, v, starts, offsets):
        """``sum_k conj(E[k]) v[k + off]`` over the given start rows, one sum per offset."""
        sums = [0] * len(offsets)
        step = max(1, 4_000_000 // max(self.nu.size, 1))
        for lo in range(0, starts.size, step):
            rows = starts[lo:lo + step]
            Ec = (self._E[rows] if self._E is not None
                  else np.exp(1j * np.outer(self.times[rows], self.nu))).conj().T
            for i, off in enumerate(offsets):
                sums[i] = sums[i] + Ec @ v[rows + off]
        return sums

    def _evaluate(self, weights, rows) -> np.ndarray:
        """``sum_j E[t, j] W[j, :]`` for stacked profile weights ``W``."""
        idx = np.arange(self.times.size)[slice(None) if rows is None else rows]
        out = np.empty((idx.size, weights.shape[1]), complex)
        step = max(1, 4_000_000 // max(self.nu.size, 1))
        for lo in range(0, idx.size, step):
            sel = idx[lo:lo + step]
            E = self._E[sel] if self._E is not None else np.exp(1j * np.outer(self.times[sel], self.nu))
            out[lo:lo + step] = E @ weights
        return out, idx

    def apply(self, values, derivative: bool = False, rows=None) -> np.ndarray:
        """Evaluate the operator; ``derivative`` returns the time derivative instead."""
        w = self.coef * self.transform(values)
        if derivative:
            w = w * (1j * self.nu)
        out, idx = self._evaluate(w[:, None] * self.profile, rows)
        v = np.asarray(values)
        if self.tail is not None and v.ndim == 1:
            out += self.tail.evaluate(v, derivative)[idx]
        return out

    def apply_pair(self, values, rows=None) -> tuple[np.ndarray, np.ndarray]:
        """The operator and its time derivative from one transform and one product."""
        w = self.coef * self.transform(values)
        nx = self.x.size
        W = np.hstack([w[:, None] * self.profile, (w * 1j * self.nu)[:, None] * self.profile])
        out, idx = self._evaluate(W, rows)
        val, der = out[:, :nx], out[:, nx:]
        v = np.asarray(values)
        if self.tail is not None and v.ndim == 1:
            val += self.tail.evaluate(v)[idx]
            der += self.tail.evaluate(v, derivative=True)[idx]
        return val, der

    def tail_ratio(self, values) -> float:
        """Size of the integrand at the truncation edge relative to its peak."""
        w = np.abs(self.coef * self.transform(values))
        if w.max() == 0:
            return 0.0
        edge = np.argsort(np.abs(self.nu))[-max(4, self.nu.size // 200):]
        dens = w / np.maximum(np.abs(self.coef), 1e-300)
        return float(dens[edge].max() / dens.max())


def _output_x(grid: SpatialGrid, x) -> np.ndarray:
    return grid.x if x is None else np.asarray(x, dtype=float)


def kg_boundary_kernel(grid: SpatialGrid, times, cfg: BoundaryKernelConfig | None = None, x=None,
                       parts: str = "AB", tail: bool | None = None) -> BoundaryKernel:
    """Kernel of ``V_0^t(0, h)``: ``n = Re (A + B) / (2 pi)``.

    ``A`` runs over ``mu = sin(theta)``, ``theta in [-pi/2, pi/2]``, with profile
    ``exp(-x cos theta) rho(x cos theta)``; ``B`` over ``|mu| <= Xi_max`` with
    frequency ``-sgn(mu) <mu>`` and profile ``exp(i mu x)``.
    """
    cfg = cfg or BoundaryKernelConfig()
    times = np.asarray(times, dtype=float)
    xs = _output_x(grid, x)
    nus, coefs, profs = [], [], []
    if "A" in parts:
        panels = max(1, cfg.n_A // cfg.panel_order)
        th, w = composite_gl(np.linspace(-np.pi / 2, np.pi / 2, panels + 1), cfg.panel_order)
        c = np.cos(th)
        y = np.outer(c, xs)
        with np.errstate(over="ignore"):
            prof = np.where(y > -1.0, np.exp(-np.maximum(y, -1.0)) * rho(y), 0.0)
        nus.append(np.sin(th))
        coefs.append(w * c / (2 * np.pi))
        profs.append(prof.astype(complex))
    if "B" in parts:
        cut = cfg.kg_cut(grid)
        t_span = times[-1] - times[0]
        rate = np.max(np.abs(xs)) + 2.0 * t_span
        n_panels = None if cfg.n_B is None else max(1, cfg.n_B // cfg.panel_order)
        edges = graded_edges(cut, rate, 0.0, cfg.phase_per_panel, cfg.refine_levels, n_panels)
        mu, w = composite_gl(edges, cfg.panel_order)
        mu = np.concatenate([-mu[::-1], mu])
        w = np.concatenate([w[::-1], w])
        nus.append(-d_symbol(mu))
        coefs.append(w * np.abs(mu) / japanese(mu) / (2 * np.pi))
        profs.append(np.exp(1j * np.outer(mu, xs)))
    tail = cfg.tail_correction if tail is None else tail
    corr = KGTail(times, xs, cfg.kg_cut(grid)) if (tail and "B" in parts) else None
    return BoundaryKernel(times, np.concatenate(nus), np.concatenate(coefs), np.vstack(profs), xs,
                          cfg.cache_limit, name="kg", tail=corr)


def schrodinger_boundary_kernel(grid: SpatialGrid, times, cfg: BoundaryKernelConfig | None = None,
                                x=None) -> BoundaryKernel:
    """Kernel of ``W_0^t(0, g)``.

    ``(1/pi) int_0^B [exp(-i b^2 t + i b x) b g_hat(-b^2)
    + exp(i b^2 t - b x) rho(b x) b g_hat(b^2)] db``.
    """
    cfg = cfg or BoundaryKernelConfig()
    times = np.asarray(times, dtype=float)
    xs = _output_x(grid, x)
    cut = cfg.schrodinger_cut(grid)
    t_span = times[-1] - times[0]
    n_panels = None if cfg.n_B is None else max(1, cfg.n_B // cfg.panel_order)
    edges = graded_edges(cut, np.max(np.abs(xs)) + 1.0, 4.0 * t_span, cfg.phase_per_panel,
                         cfg.refine_levels, n_panels)
    beta, w = composite_gl(edges, cfg.panel_order)
    c = w * beta / np.pi
    osc = np.exp(1j * np.outer(beta, xs))
    y = np.outer(beta, xs)
    with np.errstate(over="ignore"):
        eva = np.where(y > -1.0, np.exp(-np.maximum(y, -1.0)) * rho(y), 0.0)
    nu = np.concatenate([-beta ** 2, beta ** 2])
    return BoundaryKernel(times, nu, np.concatenate([c, c]), np.vstack([osc, eva.astype(complex)]), xs,
                          cfg.cache_limit, name="schrodinger")


# --------------------------------------------------------------------------
# public entry points


def _series_on(h: TimeSeries):
    t, v = _one_sided(h)
    return t, v


def kg_boundary_A(h: TimeSeries, x: float, t: float, cfg: BoundaryKernelConfig | None = None,
                  grid: SpatialGrid | None = None) -> complex:
    """The evanescent integral ``A`` of the KG boundary formula at one point."""
    cfg = cfg or BoundaryKernelConfig()
    panels = max(1, cfg.n_A // cfg.panel_order)
    th, w = composite_gl(np.linspace(-np.pi / 2, np.pi / 2, panels + 1), cfg.panel_order)
    mu, c = np.sin(th), np.cos(th)
    hh = halfline_time_transform(h, mu)
    y = x * c
    prof = np.where(y > -1.0, np.exp(-np.maximum(y, -1.0)) * rho(y), 0.0)
    return complex(np.sum(w * c * np.exp(1j * mu * t) * prof * hh))


def _b_weight(mu):
    """``(1 + 1/mu^2)^{-1/2} = |mu| / <mu>``."""
    return np.abs(mu) / japanese(mu)


def kg_boundary_B(h: TimeSeries, x: float, t: float, cfg: BoundaryKernelConfig | None = None,
                  grid: SpatialGrid | None = None, xi_max: float | None = None) -> complex:
    """The oscillatory integral ``B`` of the KG boundary formula at one point."""
    cfg = cfg or BoundaryKernelConfig()
    if xi_max is None:
        xi_max = cfg.kg_cut(grid) if grid is not None else (cfg.xi_max or 64.0)
    th, _ = _series_on(h)
    rate = abs(x) + t + (th[-1] - th[0])
    n_panels = None if cfg.n_B is None else max(1, cfg.n_B // cfg.panel_order)
    edges = graded_edges(xi_max, rate, 0.0, cfg.phase_per_panel, cfg.refine_levels, n_panels)
    mu, w = composite_gl(edges, cfg.panel_order)
    mu = np.concatenate([-mu[::-1], mu])
    w = np.concatenate([w[::-1], w])
    nu = -d_symbol(mu)
    hh = halfline_time_transform(h, nu)
    integrand = np.exp(1j * nu * t + 1j * mu * x) * hh * _b_weight(mu)
    edge = np.abs(integrand[[0, -1]]).max()
    peak = np.abs(integrand).max()
    if peak > 0 and edge > cfg.tail_warn * peak:
        warnings.warn(f"B integrand at |mu|=Xi_max is {edge / peak:.1e} of its peak; raise Xi_max",
                      RuntimeWarning, stacklevel=2)
    return complex(np.sum(w * integrand))


def _check_tail(kernel: BoundaryKernel, values, cfg: BoundaryKernelConfig, label: str):
    r = kernel.tail_ratio(values)
    if r > cfg.tail_warn:
        warnings.warn(f"{label}: integrand at the frequency cut is {r:.1e} of its peak; raise the cut",
                      RuntimeWarning, stacklevel=3)
    return r


def kg_boundary_V0(h: TimeSeries, grid: SpatialGrid, times=None, cfg: BoundaryKernelConfig | None = None,
                   x=None, with_time_derivative: bool = False, kernel: BoundaryKernel | None = None):
    """Solution of the linear KG half-line problem with zero data and trace ``h``.

    Returns ``n`` of shape ``(len(times), nx)`` (and ``n_t`` if requested).  The
    real part is returned; an imaginary residue above ``1e-4 ||n||`` warns.
    """
    cfg = cfg or BoundaryKernelConfig()
    times = h.times if times is None else np.asarray(times, dtype=float)
    t, v = _series_on(h)
    if kernel is None:
        if t.size != times.size or not np.allclose(t, times):
            raise ValueError("the series must be sampled on the output time grid")
        kernel = kg_boundary_kernel(grid, times, cfg, x)
    _check_tail(kernel, v, cfg, "KG boundary operator")
    n = kernel.apply(v)
    scale = np.max(np.abs(n.real))
    resid = np.max(np.abs(n.imag))
    if np.isrealobj(v) and scale > 0 and resid > 1e-4 * scale:
        warnings.warn(f"KG boundary operator: imaginary residue {resid / scale:.1e} of the field",
                      RuntimeWarning, stacklevel=2)
    n = n.real if np.isrealobj(v) else n
    if with_time_derivative:
        nt = kernel.apply(v, derivative=True)
        return n, (nt.real if np.isrealobj(v) else nt)
    return n


def schrodinger_boundary_W0(g: TimeSeries, grid: SpatialGrid, times=None,
                            cfg: BoundaryKernelConfig | None = None, x=None,
                            kernel: BoundaryKernel | None = None) -> np.ndarray:
    """Solution of the free Schrodinger half-line problem with zero data and trace ``g``."""
    cfg = cfg or BoundaryKernelConfig()
    times = g.times if times is None else np.asarray(times, dtype=float)
    t, v = _series_on(g)
    if kernel is None:
        if t.size != times.size or not np.allclose(t, times):
            raise ValueError("the series must be sampled on the output time grid")
        kernel = schrodinger_boundary_kernel(grid, times, cfg, x)
    _check_tail(kernel, v, cfg, "Schrodinger boundary operator")
    return kernel.apply(v)


def trace_p(u0e, times, T_eta: float = 1.0) -> TimeSeries:
    """``p(t) = eta(t) [e^{it Delta} u0e](0)``, read at the node ``x = 0``."""
    from .cutoffs import eta
    from .flows import schrodinger_trajectory

    times = np.asarray(times, dtype=float)
    grid = u0e.grid
    traj = schrodinger_trajectory(grid, u0e.values, times)
    return TimeSeries(times, eta(times / T_eta) * traj[:, grid.origin])


def trace_r(phi, times) -> TimeSeries:
    """``r(t) = (e^{itD} phi_+ + e^{-itD} phi_-)(0) / 2``."""
    from .flows import halfwave_trajectory

    times = np.asarray(times, dtype=float)
    grid = phi.plus.grid
    o = grid.origin
    v = 0.5 * (halfwave_trajectory(grid, phi.plus.values, times, 1)[:, o]
               + halfwave_trajectory(grid, phi.minus.values, times, -1)[:, o])
    return TimeSeries(times, v)


def dump_kernel_csv(path, x, times, field) -> None:
    """Audit dump: rows ``x, t, Re, Im``."""
    X, Tt = np.meshgrid(np.asarray(x), np.asarray(times))
    data = np.column_stack([X.ravel(), Tt.ravel(), np.real(field).ravel(), np.imag(field).ravel()])
    np.savetxt(path, data, delimiter=",", header="x,t,re,im", comments="")
