"""Local Picard solve, time-step selection, the odd-restart global scheme and diagnostics."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .boundary import BoundaryKernelConfig, kg_boundary_kernel
from .cutoffs import eta_T
from .duhamel import GammaData, LinearPart, apply_kg_boundary, apply_schrodinger_boundary, gamma_map, odd_forcing
from .errors import ConvergenceError, ValidationError
from .grid import SpatialGrid, fft_x, ifft_x, japanese, reflect
from .halfline import HalfLineFunction, TimeSeries, extend, halfline_norm
from .state import KGSState, KGSTrajectory

__all__ = [
    "LocalProblem",
    "SolveReport",
    "LocalSolution",
    "GlobalReport",
    "KGSState",
    "select_T",
    "local_solve",
    "global_solve",
    "conservation_check",
    "smoothing_diagnostic",
    "extension_independence_test",
    "halfline_mass",
    "wave_norm",
    "time_sobolev_norm",
    "tail_slope",
]

S0_WINDOW = (-0.25, 0.5)
S1_WINDOW = (-0.5, 0.5)
Signal = Callable[[np.ndarray], np.ndarray] | TimeSeries | None


def sample_signal(sig: Signal, times: np.ndarray) -> np.ndarray:
    """Boundary signal on ``times``; a series is interpolated and held constant past its end."""
    times = np.asarray(times, dtype=float)
    if sig is None:
        return np.zeros(times.size)
    if isinstance(sig, TimeSeries):
        v = sig.values
        out = np.interp(times, sig.times, v.real)
        if np.iscomplexobj(v):
            out = out + 1j * np.interp(times, sig.times, v.imag)
        return out
    return np.broadcast_to(np.asarray(sig(times)), times.shape).copy()


@dataclass
class LocalProblem:
    """Half-line data and boundary signals, plus the extension choices.

    ``u_policy`` and ``wave_policy`` extend the data to the line; ``forcing``
    selects ``|u|^2`` as is (``"whole"``) or its odd version (``"odd"``).
    ``potential`` is an extra real field added to ``n`` in the Schrodinger
    coupling; it is a callable ``times -> (len(times), N)`` array.
    """

    grid: SpatialGrid
    u0: HalfLineFunction
    n0: HalfLineFunction
    n1: HalfLineFunction
    g: Signal = None
    h: Signal = None
    s0: float = 0.0
    s1: float = 0.0
    u_policy: str = "zero"
    wave_policy: str = "odd"
    forcing: str = "whole"
    potential: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        for name in ("u0", "n0", "n1"):
            if getattr(self, name).grid != self.grid:
                raise ValidationError(f"{name} lives on a different grid")
        if not S0_WINDOW[0] < self.s0 < S0_WINDOW[1]:
            warnings.warn(f"s0={self.s0} outside the admissible window {S0_WINDOW}", RuntimeWarning, stacklevel=2)
        if not S1_WINDOW[0] < self.s1 < S1_WINDOW[1]:
            warnings.warn(f"s1={self.s1} outside the admissible window {S1_WINDOW}", RuntimeWarning, stacklevel=2)

    @classmethod
    def zero(cls, grid: SpatialGrid, **kw) -> "LocalProblem":
        z = HalfLineFunction(grid, np.zeros(grid.N // 2 + 1))
        return cls(grid, z, z, z, **kw)


@dataclass
class SolveReport:
    T: float
    dt: float
    steps: int
    residuals: list = field(default_factory=list)
    iterations: int = 0
    mass: np.ndarray | None = None
    wave_norm: np.ndarray | None = None
    trace_error_u: float = 0.0
    trace_error_n: float = 0.0
    warnings: list = field(default_factory=list)

    @property
    def ratios(self) -> list:
        """Successive residual ratios, ignoring steps already at round-off level."""
        r = self.residuals
        return [r[k + 1] / r[k] for k in range(len(r) - 1) if r[k] > 1e-13]


@dataclass
class LocalSolution:
    trajectory: KGSTrajectory
    linear: KGSTrajectory
    report: SolveReport
    window: KGSTrajectory | None = None


# --------------------------------------------------------------------------
# norms used for step selection and monitoring


def halfline_mass(grid: SpatialGrid, values: np.ndarray) -> np.ndarray:
    """Trapezoid ``L^2(0, L)`` norm of each row (the node ``x = L`` is the periodic image of ``-L``)."""
    v = np.atleast_2d(values)
    half = np.concatenate([v[:, grid.origin:], v[:, :1]], axis=1)
    w = np.full(half.shape[1], grid.dx)
    w[0] = w[-1] = 0.5 * grid.dx
    out = np.sqrt(np.abs(half) ** 2 @ w)
    return out if np.ndim(values) > 1 else out[0]


def wave_norm(grid: SpatialGrid, n: np.ndarray, nt: np.ndarray, s1: float) -> np.ndarray:
    """``sqrt(||n||^2_{H^s1} + ||n_t||^2_{H^{s1-1}})`` of the odd extensions, per row.

    For odd data this is the conserved energy of the free flow.
    """
    wn = japanese(grid.xi) ** (2 * s1)
    a = fft_x(grid, odd_forcing(grid, np.atleast_2d(n)))
    b = fft_x(grid, odd_forcing(grid, np.atleast_2d(nt)))
    e = (np.abs(a) ** 2 @ wn + np.abs(b) ** 2 @ (wn / japanese(grid.xi) ** 2)) / (2 * grid.L)
    out = np.sqrt(e)
    return out if np.ndim(n) > 1 else out[0]


def time_sobolev_norm(values: np.ndarray, dt: float, s: float) -> float:
    """``H^s`` norm of a series on ``t >= 0``, zero-padded to twice its length."""
    v = np.asarray(values)
    if v.size == 0 or not np.any(v):
        return 0.0
    M = 2 * v.size
    c = dt * np.fft.fft(v, M)
    tau = 2 * np.pi * np.fft.fftfreq(M, dt)
    return float(np.sqrt(np.sum((1 + tau ** 2) ** s * np.abs(c) ** 2) / (M * dt)))


def _signal_norm(sig: Signal, s: float, horizon: float = 2.0, dt: float = 1e-3) -> float:
    if sig is None:
        return 0.0
    t = np.arange(0.0, 2 * horizon + dt / 2, dt)
    return time_sobolev_norm(eta_T(t, horizon) * sample_signal(sig, t), dt, s)


def data_norms(problem: LocalProblem) -> dict:
    return {
        "u0": problem.u0.l2(),
        "n0": halfline_norm(problem.n0, problem.s1, "odd"),
        "n1": halfline_norm(problem.n1, problem.s1 - 1.0, "odd"),
        "h": _signal_norm(problem.h, problem.s1),
    }


def select_T(problem: LocalProblem, c_T: float = 0.1, norms: dict | None = None) -> float:
    """``c_T min(1, ||u0||^-2, (||n0|| + ||n1|| + ||h||)^-2)``; the exponent is that of ``b = 1/3``."""
    if not c_T > 0:
        raise ValueError("c_T must be positive")
    nm = data_norms(problem) if norms is None else norms
    cand = [1.0]
    if nm["u0"] > 0:
        cand.append(nm["u0"] ** -2)
    wave = nm["n0"] + nm["n1"] + nm.get("h", 0.0)
    if wave > 0:
        cand.append(wave ** -2)
    return c_T * min(cand)


# --------------------------------------------------------------------------
# local solve


def _kg_free(grid: SpatialGrid, n0: np.ndarray, n1: np.ndarray, times: np.ndarray):
    a, b = fft_x(grid, n0), fft_x(grid, n1)
    w = japanese(grid.xi)
    c, s = np.cos(np.outer(times, w)), np.sin(np.outer(times, w))
    n = ifft_x(grid, c * a + s / w * b).real
    nt = ifft_x(grid, -w * s * a + c * b).real
    return n, nt


def linear_part(problem: LocalProblem, data: GammaData) -> LinearPart:
    """Free flows of the extended data plus the boundary operators that fix their traces."""
    g, times, T = data.grid, data.times, data.T
    o = g.origin
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="odd extension forces")
        u0e = extend(problem.u0, problem.u_policy).values
        n0e = extend(problem.n0, problem.wave_policy).values.real
        n1e = extend(problem.n1, problem.wave_policy).values.real
    cu = fft_x(g, u0e)
    free_u = ifft_x(g, np.exp(-1j * np.outer(times, g.xi ** 2)) * cu)
    cut = eta_T(times, T)
    su = cut * (sample_signal(problem.g, times) - free_u[:, o])
    scale_u = max(float(np.max(np.abs(free_u))), 1e-300)
    u_lin = free_u + apply_schrodinger_boundary(data, su, scale_u)
    free_n, free_nt = _kg_free(g, n0e, n1e, times)
    sn = cut * (np.real(sample_signal(problem.h, times)) - free_n[:, o])
    scale_n = max(float(np.max(np.abs(free_n))), 1e-300)
    vn, vnt = apply_kg_boundary(data, sn, scale_n)
    return LinearPart(u_lin, free_n + vn, free_nt + vnt, {"u": su, "n": sn})


def _window(T: float, dt: float, min_steps: int):
    steps = max(min_steps, int(math.floor(T / dt + 1e-9)))
    return steps, dt * np.arange(2 * steps + 1)


def local_solve(problem: LocalProblem, T: float | None = None, dt: float = 1e-3, tol_fp: float = 1e-10,
                max_iter: int = 30, c_T: float = 0.1, kernel_cfg: BoundaryKernelConfig | None = None,
                min_steps: int = 4, steps: int | None = None) -> LocalSolution:
    """Picard iteration of the fixed-point map on the window ``[0, 2T]``.

    ``T`` is rounded down to a whole number of steps (at least ``min_steps``);
    the returned trajectory covers ``[0, T]``, where every cutoff equals one.
    """
    if T is None and steps is None:
        T = select_T(problem, c_T)
    if steps is None:
        steps, times = _window(T, dt, min_steps)
    else:
        times = dt * np.arange(2 * steps + 1)
    T_eff = steps * dt
    g = problem.grid
    pot = None if problem.potential is None else np.asarray(problem.potential(times), float)
    data = GammaData(g, times, T_eff, LinearPart(None, None, None), potential=pot,
                     wave_policy=problem.forcing, kernel_cfg=kernel_cfg or BoundaryKernelConfig())
    report = SolveReport(T=T_eff, dt=dt, steps=steps)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        data.linear = linear_part(problem, data)
        cut = data.cut
        X = KGSTrajectory(g, times, cut * data.linear.u, cut * data.linear.n, cut * data.linear.nt)
        linear = X
        converged = False
        for it in range(1, max_iter + 1):
            Y = gamma_map(X, data)
            size = Y.sup_size()
            res = Y.sup_distance(X) / size if size > 0 else 0.0
            report.residuals.append(res)
            X = Y
            if not np.isfinite(res) or res > 1e6:
                break
            if res <= tol_fp:
                converged = True
                break
        report.iterations = len(report.residuals)
    report.warnings = sorted({str(w.message) for w in caught})
    for msg in report.warnings:
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    if not converged:
        raise ConvergenceError(f"Picard iteration did not reach {tol_fp:g} in {max_iter} steps "
                               f"(last residual {report.residuals[-1]:.3e})",
                               residuals=report.residuals, partial=X.rows(slice(0, steps + 1)))
    traj = X.rows(slice(0, steps + 1))
    o = g.origin
    report.mass = halfline_mass(g, traj.u)
    report.wave_norm = wave_norm(g, traj.n, traj.nt, problem.s1)
    tt = traj.times
    gu = sample_signal(problem.g, tt)
    hn = np.real(sample_signal(problem.h, tt))
    report.trace_error_u = float(np.max(np.abs(traj.u[:, o] - gu)))
    report.trace_error_n = float(np.max(np.abs(traj.n[:, o] - hn)))
    return LocalSolution(traj, linear.rows(slice(0, steps + 1)), report, window=X)


# --------------------------------------------------------------------------
# global scheme


@dataclass
class GlobalReport:
    times: np.ndarray
    mass: np.ndarray
    wave_norm: np.ndarray
    step_T: list = field(default_factory=list)
    restart_times: list = field(default_factory=list)
    iterations: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    even_part: list = field(default_factory=list)
    restart_wave_norm: list = field(default_factory=list)
    restart_mass: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def mT(self) -> list:
        """Advance per doubling cycle, ``T^{1/2} W / ||u||^2``, at every restart."""
        return [math.sqrt(T) * W / m ** 2 if m > 0 else math.inf
                for T, W, m in zip(self.step_T, self.restart_wave_norm, self.restart_mass)]


def _halfline(grid: SpatialGrid, row: np.ndarray, s: float = 0.0) -> HalfLineFunction:
    return HalfLineFunction(grid, np.concatenate([row[grid.origin:], row[:1]]), s)


def external_wave(grid: SpatialGrid, h: Signal, T_final: float, dt: float, pad: float,
                  kernel_cfg: BoundaryKernelConfig | None = None):
    """``m = V_0^t(0, h)`` on ``[0, T_final + pad]`` for the whole grid, as a callable of times."""
    rows = int(round((T_final + pad) / dt)) + 1
    span = max(2 * T_final, T_final + pad)
    times = dt * np.arange(int(round(span / dt)) + 1)
    series = eta_T(times, max(T_final + pad, T_final)) * np.real(sample_signal(h, times))
    K = kg_boundary_kernel(grid, times, kernel_cfg or BoundaryKernelConfig(), x=grid.x)
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="boundary series does not vanish")
        m = K.apply(series, rows=slice(0, rows)).real

    def potential_at(offset: int):
        def f(t):
            idx = offset + np.rint(np.asarray(t) / dt).astype(int)
            return m[np.clip(idx, 0, rows - 1)]
        return f

    return m, potential_at


def global_solve(problem: LocalProblem, T_final: float, dt: float = 1e-3, c_T: float = 0.1,
                 tol_fp: float = 1e-10, max_iter: int = 30, kernel_cfg: BoundaryKernelConfig | None = None,
                 min_steps: int = 4, T_override: float | None = None):
    """Iterate local solves with restarts ``(u(T), n^odd(T), n_t^odd(T))``.

    Requires ``g = 0``.  A nonzero ``h`` is moved into the external field
    ``m = V_0^t(0, h)``, computed once, and the wave part then carries zero
    boundary data.  Returns ``(trajectory, report)``.
    """
    grid = problem.grid
    total = int(round(T_final / dt))
    if total < 1:
        raise ValidationError("T_final must cover at least one time step")
    if problem.g is not None and np.max(np.abs(sample_signal(problem.g, dt * np.arange(total + 1)))) > 0:
        raise ValidationError("the global scheme requires zero Schrodinger boundary data")
    has_h = problem.h is not None and np.any(sample_signal(problem.h, dt * np.arange(total + 1)) != 0)
    potential_at = None
    if has_h:
        _, potential_at = external_wave(grid, problem.h, T_final, dt, pad=2 * c_T + 4 * min_steps * dt,
                                        kernel_cfg=kernel_cfg)
    h_norm = _signal_norm(problem.h, problem.s1) if has_h else 0.0
    u = problem.u0
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="odd extension forces")
        n = _halfline(grid, extend(problem.n0, "odd").values.real, problem.s1)
        nt = _halfline(grid, extend(problem.n1, "odd").values.real, problem.s1 - 1)
    pos = 0
    U, N_, NT = [], [], []
    rep = GlobalReport(np.empty(0), np.empty(0), np.empty(0))
    caught_all = set()
    while pos < total:
        local = LocalProblem(grid, u, n, nt, None, None, problem.s0, problem.s1, "zero", "odd", "odd",
                             potential_at(pos) if potential_at else None)
        norms = data_norms(local)
        norms["h"] = h_norm
        T = T_override if T_override is not None else select_T(local, c_T, norms)
        steps = max(min_steps, int(math.floor(T / dt + 1e-9)))
        steps = min(steps, total - pos)
        try:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                sol = local_solve(local, dt=dt, tol_fp=tol_fp, max_iter=max_iter, kernel_cfg=kernel_cfg,
                                  steps=steps)
            caught_all.update(str(w.message) for w in caught)
        except ConvergenceError as exc:
            part = _concat(grid, dt, U, N_, NT, exc.partial, pos)
            raise ConvergenceError(f"local step at t={pos * dt:.4g} failed: {exc}", residuals=exc.residuals,
                                   partial=part) from exc
        tr = sol.trajectory
        rep.step_T.append(steps * dt)
        rep.restart_times.append(pos * dt)
        rep.iterations.append(sol.report.iterations)
        rep.residuals.append(sol.report.residuals)
        rep.restart_wave_norm.append(float(wave_norm(grid, tr.n[0], tr.nt[0], problem.s1)))
        rep.restart_mass.append(float(halfline_mass(grid, tr.u[0])))
        end_n, end_nt = tr.n[-1], tr.nt[-1]
        even = 0.5 * (end_n + reflect(end_n))
        rep.even_part.append(float(np.max(np.abs(even[1:]))))
        U.append(tr.u[:-1])
        N_.append(tr.n[:-1])
        NT.append(tr.nt[:-1])
        pos += steps
        u = _halfline(grid, tr.u[-1], problem.s0)
        n = _halfline(grid, end_n, problem.s1)
        nt = _halfline(grid, end_nt, problem.s1 - 1)
        if pos >= total:
            U.append(tr.u[-1:])
            N_.append(tr.n[-1:])
            NT.append(tr.nt[-1:])
    traj = KGSTrajectory(grid, dt * np.arange(total + 1), np.vstack(U), np.vstack(N_), np.vstack(NT))
    rep.times = traj.times
    rep.mass = halfline_mass(grid, traj.u)
    rep.wave_norm = wave_norm(grid, traj.n, traj.nt, problem.s1)
    rep.warnings = sorted(caught_all)
    return traj, rep


def _concat(grid, dt, U, N_, NT, partial, pos):
    if partial is None:
        return None
    u = np.vstack(U + [partial.u]) if U else partial.u
    n = np.vstack(N_ + [partial.n]) if N_ else partial.n
    nt = np.vstack(NT + [partial.nt]) if NT else partial.nt
    return KGSTrajectory(grid, dt * np.arange(u.shape[0]), u, n, nt)


# --------------------------------------------------------------------------
# diagnostics


def _ux_origin(grid: SpatialGrid, u: np.ndarray) -> np.ndarray:
    """One-sided fourth-order derivative at ``x = 0`` from the nodes ``x >= 0``."""
    o = grid.origin
    c = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
    return u[:, o:o + 5] @ c / grid.dx


def conservation_check(trajectory: KGSTrajectory, g: Signal = None) -> dict:
    """Mass drift on the half-line, and for ``g != 0`` the flux balance
    ``||u(t)||^2 - ||u_0||^2 = 2 Im int conj(g) u_x(0) dt``.

    The sign follows from ``int_0^inf conj(u) u_xx = -conj(u(0)) u_x(0) - ||u_x||^2``.
    """
    grid = trajectory.grid
    mass = halfline_mass(grid, trajectory.u)
    m0 = mass[0]
    drift = float(np.max(np.abs(mass - m0)) / m0) if m0 > 0 else float(np.max(mass))
    out = {"mass": mass, "max_relative_drift": drift, "flux": np.zeros_like(mass), "balance_residual": 0.0}
    gv = sample_signal(g, trajectory.times)
    if np.any(gv != 0):
        ux = _ux_origin(grid, trajectory.u)
        integrand = 2 * np.imag(np.conj(gv) * ux)
        dt = trajectory.times[1] - trajectory.times[0]
        flux = np.concatenate([[0.0], np.cumsum(0.5 * dt * (integrand[1:] + integrand[:-1]))])
        change = mass ** 2 - m0 ** 2
        scale = max(m0 ** 2, np.max(np.abs(change)), 1e-300)
        out["flux"] = flux
        out["balance_residual"] = float(np.max(np.abs(change - flux)) / scale)
    return out


def tail_norms(grid: SpatialGrid, values: np.ndarray, lams: np.ndarray) -> np.ndarray:
    c = np.abs(fft_x(grid, values)) ** 2 / (2 * grid.L)
    xi = np.abs(grid.xi)
    return np.sqrt(np.array([c[xi >= lam].sum() for lam in lams]))


def tail_slope(grid: SpatialGrid, values: np.ndarray, lam_min: float, lam_max: float, count: int = 16) -> float:
    """Least-squares slope of ``log ||P_{|xi| >= lam} f||`` against ``log lam``."""
    lams = np.geomspace(lam_min, lam_max, count)
    tails = tail_norms(grid, values, lams)
    ok = tails > 0
    if ok.sum() < 2:
        return -math.inf
    return float(np.polyfit(np.log(lams[ok]), np.log(tails[ok]), 1)[0])


def smoothing_diagnostic(solution: LocalSolution, problem: LocalProblem, a0: float, a1: float,
                         lam_min: float = 2.0, lam_max: float | None = None) -> dict:
    """Fourier-tail slopes of the nonlinear parts against the linear parts at ``t = T``."""
    grid = problem.grid
    lam_max = lam_max or 0.5 * grid.xi_max
    tr, lin = solution.trajectory, solution.linear
    nl_u = tr.u[-1] - lin.u[-1]
    nl_n = tr.n[-1] - lin.n[-1]
    if a0 >= min(0.5, problem.s1 + 0.5):
        warnings.warn(f"a0={a0} outside the smoothing range", RuntimeWarning, stacklevel=2)
    if a1 >= 2 * problem.s0 - problem.s1 + 0.5:
        warnings.warn(f"a1={a1} outside the smoothing range", RuntimeWarning, stacklevel=2)

    def slope(v):
        return tail_slope(grid, v, lam_min, lam_max) if np.any(v) else None

    su_lin, su_nl = slope(lin.u[-1]), slope(nl_u)
    sn_lin, sn_nl = slope(lin.n[-1]), slope(nl_n)
    gap_u = None if su_lin is None or su_nl is None else su_lin - su_nl
    gap_n = None if sn_lin is None or sn_nl is None else sn_lin - sn_nl
    from .grid import spectral_norm

    return {
        "slope_linear_u": su_lin, "slope_nonlinear_u": su_nl, "gap_u": gap_u,
        "slope_linear_n": sn_lin, "slope_nonlinear_n": sn_nl, "gap_n": gap_n,
        "nonlinear_u_norm": spectral_norm(grid, fft_x(grid, nl_u), problem.s0 + a0),
        "nonlinear_n_norm": spectral_norm(grid, fft_x(grid, nl_n), problem.s1 + a1),
        "linear_u_size": float(np.max(np.abs(lin.u[-1]))),
        "nonlinear_u_size": float(np.max(np.abs(nl_u))),
        "lam_range": [lam_min, lam_max],
    }


def extension_independence_test(problem: LocalProblem, policy_a: str, policy_b: str,
                                T: float | None = None, return_solutions: bool = False, **kw):
    """Solve with two wave-extension policies and compare on ``x >= 0``, ``t in [0, T]``.

    With ``return_solutions`` the two ``LocalSolution`` objects follow the metrics.
    """
    if T is None and "steps" not in kw:
        T = select_T(problem, kw.get("c_T", 0.1))
    sa = local_solve(replace(problem, wave_policy=policy_a), T=T, **kw)
    if policy_a == policy_b:
        sb = sa
    else:
        sb = local_solve(replace(problem, wave_policy=policy_b), T=T, **kw)
    out = {}
    for name in ("u", "n"):
        a = sa.trajectory.halfline(name)
        b = sb.trajectory.halfline(name)
        scale = max(float(np.max(np.abs(a))), 1e-300)
        l2 = float(np.linalg.norm(a - b) / max(np.linalg.norm(a), 1e-300))
        out[name] = {"sup": float(np.max(np.abs(a - b))) / scale, "l2": l2}
    out["max_discrepancy"] = max(out["u"]["sup"], out["n"]["sup"])
    if not np.any(sa.trajectory.u) and not np.any(sa.trajectory.n):
        out["max_discrepancy"] = float(max(np.max(np.abs(sb.trajectory.u)), np.max(np.abs(sb.trajectory.n))))
    out["T"] = sa.report.T
    if return_solutions:
        return out, sa, sb
    return out
