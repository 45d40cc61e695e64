import numpy as np
import pytest

from kgs_halfline.oracle_fd import FDConfig, fd_kg_ibvp, fd_kgs_coupled, fd_schrodinger_ibvp, reflection_monitor


def test_zero_data():
    cfg = FDConfig(L=10.0, N_fd=100, dt_fd=1e-2, T=0.2)
    assert not np.any(fd_schrodinger_ibvp(None, None, cfg).values)
    assert not np.any(fd_kg_ibvp(None, None, None, cfg).values)
    u, n = fd_kgs_coupled(None, None, None, None, None, cfg)
    assert not np.any(u.values) and not np.any(n.values)


def test_crank_nicolson_conserves_mass():
    cfg = FDConfig(L=20.0, N_fd=400, dt_fd=1e-2, T=1.0)
    x = cfg.x
    res = fd_schrodinger_ibvp(lambda s: np.exp(-(s - 10) ** 2) * np.exp(2j * s), None, cfg)
    mass = np.sum(np.abs(res.values) ** 2, axis=1)
    assert np.max(np.abs(mass - mass[0])) <= 1e-8 * mass[0]


def test_standing_mode_frequency():
    L, m = 10.0, 3
    k = m * np.pi / L
    cfg = FDConfig(L=L, N_fd=2000, dt_fd=5e-3, T=60.0)
    res = fd_kg_ibvp(lambda s: np.sin(k * s), None, None, cfg)
    probe = res.values[:, res.x.size // 7]
    spec = np.abs(np.fft.rfft(probe * np.hanning(probe.size), 1 << 20))
    freqs = 2 * np.pi * np.fft.rfftfreq(1 << 20, cfg.dt_fd)
    peak = freqs[np.argmax(spec)]
    assert abs(peak - np.sqrt(1 + k * k)) <= 1e-3


def _order(runs, ref):
    e = [np.max(np.abs(r - ref)) for r in runs]
    return np.log2(e[0] / e[1])


def test_schrodinger_order():
    u0 = lambda s: np.exp(-2 * (s - 5) ** 2)
    g = lambda t: 0.0 * t
    sols = []
    for n in (100, 200, 400, 1600):
        cfg = FDConfig(L=10.0, N_fd=n, dt_fd=0.4 / n, T=0.2)
        sols.append(fd_schrodinger_ibvp(u0, g, cfg).values[-1, :: n // 100])
    assert _order(sols[:2], sols[-1]) >= 1.8
    assert _order(sols[1:3], sols[-1]) >= 1.8


def test_kg_order():
    n0 = lambda s: np.exp(-2 * (s - 5) ** 2)
    sols = []
    for n in (100, 200, 400, 1600):
        cfg = FDConfig(L=10.0, N_fd=n, dt_fd=1.0 / n, T=0.5)
        sols.append(fd_kg_ibvp(n0, None, None, cfg).values[-1, :: n // 100])
    assert _order(sols[:2], sols[-1]) >= 1.8
    assert _order(sols[1:3], sols[-1]) >= 1.8


def test_coupled_reduces_to_wave_when_u_vanishes():
    cfg = FDConfig(L=10.0, N_fd=200, dt_fd=1e-2, T=0.5)
    n0 = lambda s: np.exp(-(s - 5) ** 2)
    h = lambda t: 0.2 * t ** 2 * np.exp(-t)
    _, n = fd_kgs_coupled(None, n0, None, None, h, cfg)
    ref = fd_kg_ibvp(n0, None, h, cfg)
    assert np.array_equal(n.values, ref.values)


def test_coupled_mass_drift_second_order():
    drifts = []
    for dt in (2e-2, 1e-2):
        cfg = FDConfig(L=20.0, N_fd=400, dt_fd=dt, T=1.0)
        u, _ = fd_kgs_coupled(lambda s: 0.5 * np.exp(-(s - 10) ** 2), lambda s: 0.5 * np.exp(-(s - 9) ** 2), None,
                              None, None, cfg)
        mass = np.sum(np.abs(u.values) ** 2, axis=1)
        drifts.append(np.max(np.abs(mass - mass[0])) / mass[0])
    assert drifts[0] <= 1e-8 or drifts[0] / max(drifts[1], 1e-300) >= 3.5


def test_sample_and_monitor():
    cfg = FDConfig(L=10.0, N_fd=100, dt_fd=1e-2, T=0.1)
    res = fd_kg_ibvp(lambda s: np.sin(s), None, None, cfg)
    assert np.array_equal(res.sample(res.x[::10]), res.values[:, ::10])
    assert reflection_monitor(res.x, np.zeros((3, 101))) == 0.0
    edge = np.zeros((1, 101))
    edge[0, -2] = 1.0
    assert reflection_monitor(res.x, edge) == pytest.approx(1.0)
