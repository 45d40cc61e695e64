import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kgs_halfline.errors import ConvergenceError, ValidationError
from kgs_halfline.flows import schrodinger_trajectory
from kgs_halfline.grid import make_grid
from kgs_halfline.halfline import HalfLineFunction
from kgs_halfline.solver import (LocalProblem, conservation_check, data_norms, extension_independence_test,
                                 global_solve, local_solve, select_T, smoothing_diagnostic)
from kgs_halfline.state import KGSTrajectory


@pytest.fixture(scope="module")
def grid():
    return make_grid(20.0, 128)


def _bump(grid, amp, center, width, power=0.0, k=0.0):
    return HalfLineFunction.from_function(
        grid, lambda x: amp * x ** power * np.exp(-((x - center) / width) ** 2) * np.exp(1j * k * x))


def _small(grid):
    return LocalProblem(grid, _bump(grid, 0.3, 6.0, 1.5, k=0.5), _bump(grid, 0.3, 5.0, 1.5).__class__(
        grid, np.real(_bump(grid, 0.3, 5.0, 1.5).values)), LocalProblem.zero(grid).n1)


# --- step selection ---------------------------------------------------------

def test_T_when_all_norms_small(grid):
    p = LocalProblem.zero(grid)
    assert select_T(p, 0.1, {"u0": 0.5, "n0": 0.4, "n1": 0.3, "h": 0.2}) == pytest.approx(0.1)


def test_T_scales_with_wave_size(grid):
    p = LocalProblem.zero(grid)
    assert select_T(p, 0.1, {"u0": 0.1, "n0": 6.0, "n1": 3.0, "h": 1.0}) == pytest.approx(1e-3)


def test_T_zero_data(grid):
    assert select_T(LocalProblem.zero(grid), 0.25) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        select_T(LocalProblem.zero(grid), 0.0)


def test_doubling_u0_quarters_T(grid):
    z = LocalProblem.zero(grid).n0
    big = LocalProblem(grid, _bump(grid, 3.0, 6.0, 1.0), z, z)
    bigger = LocalProblem(grid, _bump(grid, 6.0, 6.0, 1.0), z, z)
    assert data_norms(big)["u0"] > 1
    assert select_T(bigger) == pytest.approx(select_T(big) / 4, rel=1e-12)


@given(st.floats(1.5, 50), st.floats(0.01, 1))
def test_T_never_exceeds_safety_constant(w, c):
    p = LocalProblem.zero(make_grid(20.0, 16))
    T = select_T(p, c, {"u0": 0.0, "n0": w, "n1": 0.0, "h": 0.0})
    assert T == pytest.approx(c / w ** 2)
    assert T <= c


def test_admissible_window_warning(grid):
    with pytest.warns(RuntimeWarning, match="admissible"):
        LocalProblem.zero(grid, s0=0.6)


# --- local solve --------------------------------------------------------------

def test_zero_data_one_iteration(grid):
    sol = local_solve(LocalProblem.zero(grid), T=0.05, dt=1e-2)
    assert sol.report.iterations == 1
    tr = sol.trajectory
    assert not np.any(tr.u) and not np.any(tr.n) and not np.any(tr.nt)


def test_small_data_contracts(grid):
    sol = local_solve(_small(grid), T=0.1, dt=5e-3)
    assert sol.report.iterations <= 20
    assert max(sol.report.ratios) <= 0.5
    assert np.max(np.abs(sol.trajectory.n.imag if np.iscomplexobj(sol.trajectory.n) else 0)) <= 1e-8


def test_nonconvergence_raises_with_log(grid):
    with pytest.raises(ConvergenceError) as info:
        local_solve(_small(grid), T=0.1, dt=5e-3, max_iter=2, tol_fp=1e-15)
    assert len(info.value.residuals) == 2


# --- global scheme --------------------------------------------------------------

def test_global_zero_data(grid):
    traj, rep = global_solve(LocalProblem.zero(grid), T_final=0.2, dt=1e-2)
    assert not np.any(traj.u) and not np.any(traj.n)
    assert len(rep.restart_times) >= 1


def test_global_rejects_boundary_forcing(grid):
    p = LocalProblem.zero(grid, g=lambda t: t)
    with pytest.raises(ValidationError):
        global_solve(p, T_final=0.1, dt=1e-2)


def test_global_conserves_and_stays_odd(grid):
    traj, rep = global_solve(_small(grid), T_final=0.3, dt=5e-3, c_T=0.05)
    assert len(rep.restart_times) >= 3
    assert max(rep.even_part) <= 1e-8
    assert conservation_check(traj)["max_relative_drift"] <= 1e-4


# --- diagnostics -----------------------------------------------------------------

def test_free_flow_conservation():
    # packet kept clear of both x = 0 and the periodic edge
    grid = make_grid(40.0, 256)
    u0 = np.exp(-((grid.x - 20) / 2) ** 2) * np.exp(0.5j * grid.x)
    t = np.linspace(0, 1, 51)
    u = schrodinger_trajectory(grid, u0, t)
    traj = KGSTrajectory(grid, t, u, np.zeros(u.shape), np.zeros(u.shape))
    rep = conservation_check(traj)
    assert rep["max_relative_drift"] <= 1e-10
    assert not np.any(rep["flux"])


def test_flux_balance_with_boundary_data():
    from kgs_halfline.boundary import schrodinger_boundary_W0
    from kgs_halfline.cutoffs import eta
    from kgs_halfline.halfline import TimeSeries
    # the one-sided u_x(0) stencil limits the balance; the error halves twice per dx halving
    g = make_grid(20.0, 1024)
    dt = 2e-3
    t = dt * np.arange(751)
    sig = lambda s: s * np.exp(-s) * eta(np.asarray(s) / 0.5)
    u = schrodinger_boundary_W0(TimeSeries(t, sig(t)), g, t)[t <= 0.5 + 1e-12]
    tt = t[t <= 0.5 + 1e-12]
    traj = KGSTrajectory(g, tt, u, np.zeros(u.shape), np.zeros(u.shape))
    rep = conservation_check(traj, sig)
    assert rep["balance_residual"] <= 1e-3
    assert np.max(np.abs(rep["flux"])) > 0


def test_identical_policies_agree(grid):
    out = extension_independence_test(_small(grid), "odd", "odd", T=0.05, dt=1e-2)
    assert out["max_discrepancy"] == 0.0


def test_zero_data_twin(grid):
    out = extension_independence_test(LocalProblem.zero(grid), "odd", "zero", T=0.05, dt=1e-2)
    assert out["max_discrepancy"] == 0.0


def test_smoothing_zero_data(grid):
    p = LocalProblem.zero(grid)
    sol = local_solve(p, T=0.05, dt=1e-2)
    rep = smoothing_diagnostic(sol, p, 0.4, 0.4)
    assert rep["gap_u"] is None and rep["nonlinear_u_size"] == 0.0


def test_linear_only_problem_has_small_nonlinear_part(grid):
    z = LocalProblem.zero(grid).n0
    p = LocalProblem(grid, _bump(grid, 0.2, 8.0, 1.5), z, z)
    sol = local_solve(p, T=0.1, dt=5e-3)
    rep = smoothing_diagnostic(sol, p, 0.4, 0.4)
    # with n = 0 at the start the coupling enters at second order
    assert rep["nonlinear_u_size"] <= 0.1 * rep["linear_u_size"]
