import json
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kgs_halfline.cutoffs import eta
from kgs_halfline.grid import fft_x, ifft_x, japanese, make_grid
from kgs_halfline.norms import (BourgainWeight, EnsembleParams, bilinear_ratio_schrodinger_target,
                                bilinear_ratio_wave_target, ensemble_estimate_suite, xsb_norm, ysb_norm)
from kgs_halfline.state import SpaceTimeField


def _localized(grid, seed, M=64, complex_=True):
    r = np.random.default_rng(seed)
    t = np.linspace(-2.5, 2.5, M)
    v = r.standard_normal((M, grid.N))
    if complex_:
        v = v + 1j * r.standard_normal((M, grid.N))
    return SpaceTimeField(grid, t, eta(t)[:, None] * v)


def _bump_pair(N):
    grid = make_grid(4 * np.pi, N)
    dt = 0.5 * np.pi / (grid.xi_max ** 2 + 4)
    M = int(np.ceil(5.0 / dt)) + 1
    t = -2.5 + dt * np.arange(M)
    cut = eta(t)[:, None]
    u0 = np.exp(-grid.x ** 2)
    c = fft_x(grid, u0)
    u = cut * ifft_x(grid, np.exp(-1j * np.outer(t, grid.xi ** 2)) * c)
    n = cut * ifft_x(grid, np.cos(np.outer(t, japanese(grid.xi))) * fft_x(grid, np.exp(-(grid.x - 1) ** 2)))
    return SpaceTimeField(grid, t, u), SpaceTimeField(grid, t, n.real + 0j)


def test_zero_field():
    g = make_grid(4 * np.pi, 16)
    z = SpaceTimeField(g, np.linspace(0, 1, 8), np.zeros((8, 16)))
    assert xsb_norm(z, 1.0, 0.4) == 0.0
    for kind in ("plus", "minus", "inf"):
        assert ysb_norm(z, 1.0, 0.4, kind) == 0.0


def test_plain_l2_at_zero_indices():
    g = make_grid(4 * np.pi, 32)
    f = _localized(g, 0)
    l2 = np.sqrt(g.dx * f.dt * np.sum(np.abs(f.values) ** 2))
    assert xsb_norm(f, 0.0, 0.0) == pytest.approx(l2, rel=1e-12)
    assert ysb_norm(f, 0.0, 0.0, "plus") == pytest.approx(l2, rel=1e-12)


def test_wave_weight_on_its_characteristic():
    xi = np.linspace(-5, 5, 11)
    w = BourgainWeight("wave_plus", 0.7, 0.4)(xi, xi)
    assert np.allclose(np.diag(w), japanese(xi) ** 0.7)
    w = BourgainWeight("schrodinger", 0.3, 0.4)(xi, xi ** 2)
    assert np.allclose(np.diag(w), japanese(xi) ** 0.3)
    with pytest.raises(ValueError):
        BourgainWeight("bogus", 0, 0)


def test_free_wave_sits_on_the_parabola():
    # a free Schrodinger wave has X^{s,b} norm nearly independent of b
    u, _ = _bump_pair(64)
    a, b = xsb_norm(u, 0.0, 0.0), xsb_norm(u, 0.0, 0.4)
    assert b / a < 1.5


def test_unlocalized_field_warns():
    g = make_grid(4 * np.pi, 16)
    f = SpaceTimeField(g, np.linspace(0, 1, 8), np.ones((8, 16)))
    with pytest.warns(RuntimeWarning, match="time-localized"):
        xsb_norm(f, 0, 0)


@given(st.integers(0, 10_000), st.floats(-1, 1), st.floats(-0.6, 0.6))
def test_inf_weight_below_both_sides(seed, s, b):
    g = make_grid(4 * np.pi, 16)
    f = _localized(g, seed, 32)
    yi = ysb_norm(f, s, b, "inf")
    assert yi <= min(ysb_norm(f, s, b, "plus"), ysb_norm(f, s, b, "minus")) * (1 + 1e-12)


@given(st.integers(0, 10_000), st.floats(-4, 4), st.floats(-1, 1), st.floats(-0.6, 0.6),
       st.sampled_from(["x", "plus", "minus", "inf"]))
def test_norm_axioms(seed, c, s, b, kind):
    g = make_grid(4 * np.pi, 16)
    f, h = _localized(g, seed, 32), _localized(g, seed + 1, 32)
    norm = (lambda F: xsb_norm(F, s, b)) if kind == "x" else (lambda F: ysb_norm(F, s, b, kind))
    nf = norm(f)
    scaled = SpaceTimeField(g, f.times, c * f.values)
    assert norm(scaled) == pytest.approx(abs(c) * nf, rel=1e-10, abs=1e-14)
    both = SpaceTimeField(g, f.times, f.values + h.values)
    assert norm(both) <= nf + norm(h) + 1e-12


def test_undefined_ratios():
    u, n = _bump_pair(32)
    z = SpaceTimeField(u.grid, u.times, np.zeros_like(u.values))
    assert bilinear_ratio_wave_target(z, u, 0, 0, 0.2, 0.4) is None
    assert bilinear_ratio_schrodinger_target(z, n, 0, 0, 0.2, 0.4) is None
    assert bilinear_ratio_schrodinger_target(u, z, 0, 0, 0.2, 0.4) is None


def test_admissibility_warnings():
    u, n = _bump_pair(32)
    with pytest.warns(RuntimeWarning, match="admissible"):
        bilinear_ratio_wave_target(u, u, 0, 0, 0.4, 0.4)
    with pytest.warns(RuntimeWarning, match="admissible"):
        bilinear_ratio_schrodinger_target(u, n, 0, 0, 0.4, 0.4)


def test_bump_ratios_refinement_stable():
    wave, schr = [], []
    for N in (64, 128, 256):
        u, n = _bump_pair(N)
        wave.append(bilinear_ratio_wave_target(u, u, 0, 0, 0.2, 0.4))
        schr.append(bilinear_ratio_schrodinger_target(u, n, 0, 0, 0.2, 0.4))
    for r in (wave, schr):
        assert all(np.isfinite(r)) and min(r) > 0
        assert max(r) / min(r) <= 2.0


def test_ensemble_needs_ten_members():
    for count in (0, 9):
        with pytest.raises(ValueError):
            ensemble_estimate_suite(0, count)


def test_ensemble_is_deterministic():
    p = EnsembleParams(sizes=(32, 64))
    a = ensemble_estimate_suite(7, 10, p)
    b = ensemble_estimate_suite(7, 10, p)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    c = ensemble_estimate_suite(8, 10, p)
    assert json.dumps(a, sort_keys=True) != json.dumps(c, sort_keys=True)
    assert len(a["estimates"]) == 7
    for est in a["estimates"].values():
        assert [row["N"] for row in est["by_N"]] == [32, 64]
        assert all(row["defined"] == 10 for row in est["by_N"])
