"""The named experiments behind the command line.

Each ``run_*`` function takes a resolved configuration (see ``config``) and
returns an ``ExperimentResult``: pass/fail items, scalar metrics, tables for
CSV dumps and series for figures.  Nothing here touches the filesystem except
reading CSV data named in the config.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .boundary import kg_boundary_kernel, schrodinger_boundary_kernel
from .cutoffs import eta, rho
from .flows import kg_flow
from .grid import Field, SpatialGrid, ifft_x, japanese, make_grid, reflect
from .halfline import HalfLineFunction, extend, load_halfline_csv, load_timeseries_csv
from .norms import EnsembleParams, ensemble_estimate_suite
from .oracle_fd import FDConfig, FDResult, fd_kg_ibvp, fd_kgs_coupled, fd_schrodinger_ibvp, reflection_monitor
from .solver import (LocalProblem, conservation_check, data_norms, extension_independence_test, global_solve,
                     local_solve, select_T, smoothing_diagnostic, tail_norms)

__all__ = ["ExperimentResult", "RUNNERS", "build_problem", "profile_function", "signal_function",
           "picard_suite"]


@dataclass
class ExperimentResult:
    items: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    series: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(it["passed"] for it in self.items.values())


def _item(value, threshold, relation="<=", **extra) -> dict:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        ok = False
    elif relation == "<=":
        ok = value <= threshold
    else:
        ok = value >= threshold
    out = {"value": value, "threshold": threshold, "relation": relation, "passed": bool(ok)}
    out.update(extra)
    return out


# --------------------------------------------------------------------------
# data


def profile_function(spec: dict, grid: SpatialGrid):
    """Callable ``x -> values`` on ``x >= 0`` for a data spec."""
    kind = spec["kind"]
    if kind == "zero":
        return lambda x: np.zeros_like(np.asarray(x, dtype=float))
    if kind == "gaussian":
        a, c, w, p = spec["amp"], spec["center"], spec["width"], spec["power"]
        k, ch = spec["wavenumber"], spec["chirp"]

        def f(x):
            x = np.asarray(x, dtype=float)
            base = a * x ** p * np.exp(-(x - c) ** 2 / w)
            if k == 0 and ch == 0:
                return base
            return base * (1 + 1j * ch * x) * np.exp(1j * k * x)

        return f
    if kind == "rough":
        # aligned phases put a power-type singularity at the center
        coeffs = japanese(grid.xi) ** -spec["decay"] * np.exp(-1j * grid.xi * spec["center"])
        lo, hi = spec["window"]
        x = grid.x
        v = ifft_x(grid, coeffs) * rho((x - lo) / 1.5) * rho((hi - x) / 1.5)
        v = spec["amp"] * v / np.max(np.abs(v))
        half = np.concatenate([v[grid.origin:], v[:1]])
        nodes = grid.dx * np.arange(half.size)
        return _interp(nodes, half)
    if kind == "csv":
        f = load_halfline_csv(spec["path"], grid)
        return _interp(grid.dx * np.arange(f.values.size), f.values)
    raise ValueError(f"unknown profile kind {kind!r}")


def _interp(nodes, values):
    def f(x):
        x = np.asarray(x, dtype=float)
        out = np.interp(x, nodes, values.real, left=0.0, right=0.0)
        if np.iscomplexobj(values):
            out = out + 1j * np.interp(x, nodes, values.imag, left=0.0, right=0.0)
        return out

    return f


def signal_function(spec: dict):
    """Callable ``t -> values``, or ``None`` for the zero signal."""
    kind = spec["kind"]
    if kind == "zero" or (kind == "power_exp" and spec["amp"] == 0):
        return None
    if kind == "power_exp":
        a, p, r, taper = spec["amp"], spec["power"], spec["rate"], spec["taper"]

        def f(t):
            t = np.asarray(t, dtype=float)
            v = a * t ** p * np.exp(-r * t)
            return v * eta(t / taper) if taper > 0 else v

        return f
    if kind == "csv":
        ts = load_timeseries_csv(spec["path"])
        return _interp(ts.times, ts.values)
    raise ValueError(f"unknown signal kind {kind!r}")


def _grid(cfg) -> SpatialGrid:
    return make_grid(cfg["grid"]["L"], cfg["grid"]["N"])


def build_problem(cfg: dict, wave_scale: float = 1.0) -> tuple[LocalProblem, dict]:
    """The local problem described by ``cfg`` and the callables used to build it."""
    grid = _grid(cfg)
    d = cfg["data"]
    fns = {name: profile_function(d[name], grid) for name in ("u0", "n0", "n1")}
    fns.update({name: signal_function(d[name]) for name in ("g", "h")})
    H = lambda f, s, real=False: HalfLineFunction.from_function(grid, (lambda x: np.real(f(x))) if real else f, s)
    r = cfg["regularity"]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        P = LocalProblem(grid, H(fns["u0"], r["s0"]), H(lambda x: wave_scale * fns["n0"](x), r["s1"], True),
                         H(lambda x: wave_scale * fns["n1"](x), r["s1"] - 1, True), fns["g"], fns["h"],
                         r["s0"], r["s1"])
    return P, fns


def _solver_kw(cfg) -> dict:
    s = cfg["solver"]
    return {"dt": cfg["time"]["dt"], "tol_fp": s["tol_fp"], "max_iter": s["max_iter"], "c_T": s["c_T"],
            "min_steps": s["min_steps"]}


def _T(cfg):
    return cfg["time"]["T"] or None


def _rows(times, count):
    """At most ``count`` evenly spaced row indices, always including both ends."""
    n = len(times)
    if n <= count:
        return np.arange(n)
    return np.unique(np.rint(np.linspace(0, n - 1, count)).astype(int))


def _field_table(x, times, values, count):
    k = _rows(times, count)
    X, Tt = np.meshgrid(np.asarray(x), np.asarray(times)[k])
    v = np.asarray(values)[k]
    return ["x", "t", "re", "im"], np.column_stack([X.ravel(), Tt.ravel(), np.real(v).ravel(), np.imag(v).ravel()])


def _fd_on(fd: FDResult, x, times) -> np.ndarray:
    """Oracle values at spectral nodes ``x`` and times ``times`` (linear in time if grids differ)."""
    vals = fd.sample(x)
    if fd.times.size == times.size and np.allclose(fd.times, times):
        return vals
    out = np.empty((times.size, vals.shape[1]), complex)
    for j in range(vals.shape[1]):
        out[:, j] = np.interp(times, fd.times, vals[:, j].real) + 1j * np.interp(times, fd.times, vals[:, j].imag)
    return out


def _rel(a, b) -> float:
    nb = np.linalg.norm(b)
    return float(np.linalg.norm(a - b) / nb) if nb > 0 else float(np.linalg.norm(a))


# --------------------------------------------------------------------------
# linear boundary checks


def _linear_check(cfg: dict, wave: bool) -> ExperimentResult:
    grid = _grid(cfg)
    dt, T, span = cfg["time"]["dt"], cfg["time"]["T"] or 1.0, cfg["time"]["span"]
    span = max(span, T)
    name = "h" if wave else "g"
    sig = signal_function(cfg["data"][name])
    times = dt * np.arange(int(round(span / dt)) + 1)
    keep = times <= T + 1e-12
    series = np.zeros(times.size) if sig is None else np.asarray(sig(times))
    x = grid.x[grid.origin:]
    res = ExperimentResult()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if wave:
            K = kg_boundary_kernel(grid, times, x=x)
            field_ = K.apply(series, rows=keep).real
        else:
            K = schrodinger_boundary_kernel(grid, times, x=x)
            field_ = K.apply(series, rows=keep)
        fdc = FDConfig(L=grid.L, N_fd=cfg["fd"]["N_fd"], dt_fd=cfg["fd"]["dt_fd"], T=T)
        zero = lambda s: 0.0 * s
        if wave:
            fd = fd_kg_ibvp(None, None, sig or zero, fdc)
        else:
            fd = fd_schrodinger_ibvp(None, sig or zero, fdc)
    res.warnings = sorted({str(w.message) for w in caught})
    t_out = times[keep]
    ref = _fd_on(fd, x[:-1], t_out)
    mine = field_[:, :-1]
    trace = series[keep]
    scale = float(np.max(np.abs(trace)))
    trace_err = float(np.max(np.abs(field_[:, 0] - trace)))
    res.items = {
        "relative_l2_error": _item(_rel(mine, ref), cfg["tolerances"]["rel_err"]),
        "trace_recovery": _item(trace_err / scale if scale > 0 else trace_err, cfg["tolerances"]["trace"]),
    }
    initial = float(np.max(np.abs(field_[0])))
    if wave:
        res.items["initial_field"] = _item(initial, cfg["tolerances"]["initial"])
    res.metrics = {
        "initial_field": initial,
        "kernel_nodes": int(K.n_nodes),
        "time_samples": int(t_out.size),
        "oracle_points": int(fdc.N_fd),
        "oracle_cfl": float(fdc.cfl),
        "reflection_monitor": float(reflection_monitor(fd.x, fd.values)),
        "trace_max": scale,
    }
    label = "n" if wave else "u"
    rows = cfg["output"]["csv_rows"]
    res.tables = {
        f"{label}_boundary": _field_table(x, t_out, field_, rows),
        f"{label}_oracle": _field_table(x[:-1], t_out, ref, rows),
        "trace": (["t", "prescribed", "recovered_re", "recovered_im"],
                  np.column_stack([t_out, np.real(trace), np.real(field_[:, 0]), np.imag(field_[:, 0])])),
    }
    res.series = {"x": x[:-1], "times": t_out, "field": mine, "oracle": ref, "trace": trace,
                  "recovered": field_[:, 0], "label": label}
    return res


def run_linear_kg_check(cfg):
    return _linear_check(cfg, wave=True)


def run_linear_schrodinger_check(cfg):
    return _linear_check(cfg, wave=False)


# --------------------------------------------------------------------------
# local solve


def _contraction_items(reports, cfg) -> dict:
    ratios = [r for rep in reports for r in rep.ratios]
    iters = max(rep.iterations for rep in reports)
    tol = cfg["tolerances"]
    return {
        "picard_ratio": _item(max(ratios) if ratios else 0.0, tol["ratio"]),
        "picard_iterations": _item(iters, tol["iterations"]),
    }


def picard_suite(seed: int, count: int, grid: SpatialGrid, solver_kw: dict) -> list:
    """Seeded small-data regression problems; each solved with ``T`` from ``select_T``.

    Returns ``(norms, SolveReport)`` pairs.  Every member has data norms at most one.
    """
    rng = np.random.default_rng([seed, 5])
    out = []
    for _ in range(count):
        c_u, w_u, k_u = rng.uniform(3, 9), rng.uniform(0.5, 2), rng.uniform(-1, 1)
        c_n, c_m = rng.uniform(1, 3), rng.uniform(1, 3)
        size_u, size_w = rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0)
        split = rng.dirichlet([2.0, 2.0, 1.0])
        shape_u = HalfLineFunction.from_function(grid, lambda x: np.exp(-(x - c_u) ** 2 / w_u + 1j * k_u * x))
        shape_n = HalfLineFunction.from_function(grid, lambda x: x ** 2 * np.exp(-(x - c_n) ** 2))
        shape_m = HalfLineFunction.from_function(grid, lambda x: x ** 2 * np.exp(-(x - c_m) ** 2), -1.0)
        unit = data_norms(LocalProblem(grid, shape_u, shape_n, shape_m, None, lambda t: t ** 2 * np.exp(-t)))
        a_u = size_u / unit["u0"]
        a_n, a_m, a_h = (size_w * split[j] / unit[k] for j, k in enumerate(("n0", "n1", "h")))
        u0 = HalfLineFunction(grid, a_u * shape_u.values)
        n0 = HalfLineFunction(grid, a_n * shape_n.values)
        n1 = HalfLineFunction(grid, a_m * shape_m.values, -1.0)
        # u0 does not quite vanish at the origin; g starts from its trace to keep the data compatible
        g0 = complex(u0.values[0])
        a_g = rng.uniform(0, 0.2)
        P = LocalProblem(grid, u0, n0, n1, lambda t, a=a_g, z=g0: z * np.exp(-t) + a * t * np.exp(-t),
                         lambda t, a=a_h: a * t ** 2 * np.exp(-t))
        norms = data_norms(P)
        sol = local_solve(P, T=select_T(P, solver_kw["c_T"], norms), **solver_kw)
        out.append((norms, sol.report))
    return out


def run_local_solve(cfg):
    P, fns = build_problem(cfg)
    grid = P.grid
    res = ExperimentResult()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        sol = local_solve(P, T=_T(cfg), **_solver_kw(cfg))
        tr = sol.trajectory
        fdc = FDConfig(L=grid.L, N_fd=cfg["fd"]["N_fd"], dt_fd=cfg["fd"]["dt_fd"], T=float(tr.times[-1]))
        zero = lambda s: 0.0 * np.asarray(s, dtype=float)
        fu, fn = fd_kgs_coupled(fns["u0"], lambda x: np.real(fns["n0"](x)), lambda x: np.real(fns["n1"](x)),
                                fns["g"] or zero, fns["h"] or zero, fdc)
        suite = []
        if cfg["checks"]["picard_suite"]:
            suite = picard_suite(cfg["seed"], cfg["checks"]["picard_suite"], grid, _solver_kw(cfg))
    res.warnings = sorted({str(w.message) for w in caught})
    xs = grid.x[grid.origin:]
    ref_u, ref_n = _fd_on(fu, xs, tr.times), _fd_on(fn, xs, tr.times).real
    rep = sol.report
    err_u, err_n = _rel(tr.halfline("u"), ref_u), _rel(tr.halfline("n"), ref_n)
    tol = cfg["tolerances"]
    res.items = {"oracle_agreement": _item(max(err_u, err_n), tol["rel_err"], u=err_u, n=err_n)}
    res.items.update(_contraction_items([rep], cfg))
    if suite:
        sizes = [max(nm["u0"], nm["n0"] + nm["n1"] + nm["h"]) for nm, _ in suite]
        suite_items = _contraction_items([r for _, r in suite], cfg)
        res.items["suite_picard_ratio"] = suite_items["picard_ratio"]
        res.items["suite_picard_iterations"] = suite_items["picard_iterations"]
        res.items["suite_data_norms"] = _item(max(sizes), 1.0)
        res.metrics["suite"] = [{"T": r.T, "iterations": r.iterations, "max_ratio": max(r.ratios, default=0.0),
                                 "norms": nm} for nm, r in suite]
    res.metrics.update({
        "T": rep.T, "steps": rep.steps, "iterations": rep.iterations, "residuals": rep.residuals,
        "ratios": rep.ratios, "trace_error_u": rep.trace_error_u, "trace_error_n": rep.trace_error_n,
        "data_norms": data_norms(P), "oracle_points": fdc.N_fd,
    })
    rows = cfg["output"]["csv_rows"]
    res.tables = {
        "u": _field_table(xs, tr.times, tr.halfline("u"), rows),
        "n": _field_table(xs, tr.times, tr.halfline("n"), rows),
        "u_oracle": _field_table(xs, tr.times, ref_u, rows),
        "n_oracle": _field_table(xs, tr.times, ref_n, rows),
        "picard": (["iteration", "residual"], np.column_stack([np.arange(1, rep.iterations + 1), rep.residuals])),
    }
    res.series = {"x": xs, "times": tr.times, "u": tr.halfline("u"), "n": tr.halfline("n"),
                  "u_oracle": ref_u, "n_oracle": ref_n, "residuals": rep.residuals}
    return res


# --------------------------------------------------------------------------
# global scheme


def _free_even_part(P: LocalProblem, times) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        n0, n1 = extend(P.n0, "odd"), extend(P.n1, "odd")
    worst = 0.0
    for t in times:
        n, _ = kg_flow(Field(P.grid, n0.values.real), Field(P.grid, n1.values.real), float(t))
        v = n.values.real
        worst = max(worst, float(np.max(np.abs(0.5 * (v + reflect(v))))))
    return worst


def _log_fit(times, norm):
    lw = np.log(norm)
    p = np.polyfit(times, lw, 1)
    r = lw - np.polyval(p, times)
    span = float(np.ptp(lw))
    return float(np.max(np.abs(r)) / span) if span > 0 else 0.0, float(p[0]), span


def run_global_solve(cfg):
    P, _ = build_problem(cfg)
    grid = P.grid
    checks = cfg["checks"]["global"]
    tol = cfg["tolerances"]
    kw = _solver_kw(cfg)
    dt = kw.pop("dt")
    T_final = cfg["time"]["T_final"]
    T_fix = _T(cfg)
    res = ExperimentResult()
    traj = rep = None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if {"conservation", "refinement", "oddness"} & set(checks):
            traj, rep = global_solve(P, T_final, dt=dt, T_override=T_fix, **kw)
            drift = conservation_check(traj)["max_relative_drift"]
            res.metrics.update({"drift": drift, "restarts": len(rep.step_T), "step_T": rep.step_T,
                                "iterations": rep.iterations})
            if "conservation" in checks:
                res.items["l2_conservation"] = _item(drift, tol["drift"])
            if "refinement" in checks:
                _, rep2 = global_solve(P, T_final, dt=dt / 2, T_override=T_fix, **kw)
                m2 = rep2.mass
                drift2 = float(np.max(np.abs(m2 - m2[0])) / m2[0]) if m2[0] > 0 else float(np.max(m2))
                if max(drift, drift2) <= 1e-14:
                    ratio = math.inf  # nothing left to refine
                else:
                    ratio = drift / drift2 if drift2 > 0 else math.inf
                res.metrics["drift_half_dt"] = drift2
                res.items["drift_refinement"] = _item(ratio, tol["drift_ratio"], ">=")
            if "oddness" in checks:
                res.items["free_flow_even_part"] = _item(_free_even_part(P, np.linspace(0, T_final, 11)),
                                                         tol["even_free"])
                even = max(rep.even_part) if rep.even_part else 0.0
                res.items["restart_even_part"] = _item(even, tol["even_restart"], restarts=len(rep.step_T))
                res.items["restart_count"] = _item(len(rep.step_T), tol["restarts"], ">=")
        if "growth" in checks:
            fits, mts = [], []
            growth = []
            for scale in cfg["growth"]["scales"]:
                Ps, _ = build_problem(cfg, wave_scale=scale)
                tr_s, rep_s = global_solve(Ps, T_final, dt=dt, T_override=T_fix, **kw)
                if np.all(rep_s.wave_norm > 0):
                    resid, slope, span = _log_fit(tr_s.times, rep_s.wave_norm)
                else:
                    resid, slope, span = math.nan, math.nan, 0.0
                mT = float(np.median(rep_s.mT))
                fits.append(resid)
                mts.append(mT)
                growth.append({"scale": scale, "fit_residual": resid, "log_slope": slope, "log_range": span,
                               "median_mT": mT, "restarts": len(rep_s.step_T)})
                res.series.setdefault("growth", []).append((scale, tr_s.times, rep_s.wave_norm))
                if traj is None:
                    traj, rep = tr_s, rep_s
            worst = max(fits) if not any(math.isnan(f) for f in fits) else None
            res.items["growth_log_linear"] = _item(worst, tol["growth_residual"])
            spread = max(mts) / min(mts) if min(mts) > 0 and math.isfinite(max(mts)) else None
            res.items["mT_independence"] = _item(spread, tol["mT_factor"])
            res.metrics["growth"] = growth
    res.warnings = sorted({str(w.message) for w in caught})
    xs = grid.x[grid.origin:]
    rows = cfg["output"]["csv_rows"]
    res.tables = {
        "u": _field_table(xs, traj.times, traj.halfline("u"), rows),
        "n": _field_table(xs, traj.times, traj.halfline("n"), rows),
        "norms": (["t", "mass", "wave_norm"], np.column_stack([traj.times, rep.mass, rep.wave_norm])),
        "restarts": (["t_restart", "T", "iterations", "even_part"],
                     np.column_stack([rep.restart_times, rep.step_T, rep.iterations, rep.even_part])),
    }
    res.series.update({"times": traj.times, "mass": rep.mass, "wave_norm": rep.wave_norm,
                       "restart_times": rep.restart_times})
    return res


# --------------------------------------------------------------------------
# estimates lab


def run_estimates_lab(cfg):
    e, r = cfg["ensemble"], cfg["regularity"]
    params = EnsembleParams(sizes=tuple(e["sizes"]), L=e["L"], decay=e["decay"], s0=r["s0"], s1=r["s1"],
                            b=r["b"], a_wave=e["a_wave"], a_schrodinger=e["a_schrodinger"])
    res = ExperimentResult()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        suite = ensemble_estimate_suite(cfg["seed"], e["count"], params)
    res.warnings = sorted({str(w.message) for w in caught})
    for name, est in suite["estimates"].items():
        res.items[f"{name}_refinement"] = _item(est["slope_vs_logN"], cfg["tolerances"]["slope"])
    res.metrics = suite
    header = ["estimate", "N", "max", "median"]
    names = sorted(suite["estimates"])
    rows = [[i, b["N"], b["max"], b["median"]] for i, n in enumerate(names) for b in suite["estimates"][n]["by_N"]]
    res.tables = {"ratios": (header, np.array(rows, dtype=float))}
    res.metrics["estimate_index"] = names
    res.series = {"suite": suite}
    return res


# --------------------------------------------------------------------------
# uniqueness and smoothing


def run_uniqueness_check(cfg):
    P, _ = build_problem(cfg)
    tw = cfg["twin"]
    res = ExperimentResult()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        out, sa, sb = extension_independence_test(P, tw["policy_a"], tw["policy_b"], T=_T(cfg),
                                                  return_solutions=True, **_solver_kw(cfg))
    res.warnings = sorted({str(w.message) for w in caught})
    res.items["twin_agreement"] = _item(out["max_discrepancy"], cfg["tolerances"]["twin"])
    res.metrics = out
    grid = P.grid
    xs = grid.x[grid.origin:]
    rows = cfg["output"]["csv_rows"]
    t = sa.trajectory.times
    du = sa.trajectory.halfline("u") - sb.trajectory.halfline("u")
    dn = sa.trajectory.halfline("n") - sb.trajectory.halfline("n")
    res.tables = {
        "n_policy_a": _field_table(xs, t, sa.trajectory.halfline("n"), rows),
        "n_difference": _field_table(xs, t, dn, rows),
        "u_difference": _field_table(xs, t, du, rows),
    }
    res.series = {"x": xs, "times": t, "du": du, "dn": dn,
                  "wave_a": sa.window.n[-1] if sa.window is not None else None,
                  "wave_b": sb.window.n[-1] if sb.window is not None else None, "x_full": grid.x}
    return res


def run_smoothing_check(cfg):
    P, _ = build_problem(cfg)
    r = cfg["regularity"]
    sm = cfg["smoothing"]
    res = ExperimentResult()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        sol = local_solve(P, T=_T(cfg), **_solver_kw(cfg))
        diag = smoothing_diagnostic(sol, P, r["a0"], r["a1"], lam_min=sm["lam_min"], lam_max=sm["lam_max"] or None)
    res.warnings = sorted({str(w.message) for w in caught})
    need = r["a0"] - cfg["tolerances"]["smoothing_margin"]
    res.items["schrodinger_smoothing_gap"] = _item(diag["gap_u"], need, ">=")
    res.metrics = dict(diag, T=sol.report.T, iterations=sol.report.iterations)
    grid = P.grid
    lams = np.geomspace(*diag["lam_range"], 16)
    lin = sol.linear.u[-1]
    nl = sol.trajectory.u[-1] - lin
    tl, tn = tail_norms(grid, lin, lams), tail_norms(grid, nl, lams)
    res.tables = {"tails": (["lambda", "tail_linear", "tail_nonlinear"], np.column_stack([lams, tl, tn]))}
    res.series = {"lams": lams, "tail_linear": tl, "tail_nonlinear": tn}
    return res


RUNNERS = {
    "linear-kg-check": run_linear_kg_check,
    "linear-schrodinger-check": run_linear_schrodinger_check,
    "local-solve": run_local_solve,
    "global-solve": run_global_solve,
    "estimates-lab": run_estimates_lab,
    "uniqueness-check": run_uniqueness_check,
    "smoothing-check": run_smoothing_check,
}
