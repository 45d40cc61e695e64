import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kgs_halfline.grid import make_grid, sobolev_norm
from kgs_halfline.halfline import (HalfLineFunction, TimeSeries, chi_cutoff, compatibility_check, halfline_norm,
                                   load_halfline_csv, load_timeseries_csv, odd_extension, restrict,
                                   zero_extension)


def _smooth(grid, seed):
    r = np.random.default_rng(seed)
    a, c, w = r.uniform(0.2, 1), r.uniform(2, 12), r.uniform(0.5, 3)
    return HalfLineFunction.from_function(grid, lambda x: a * x * np.exp(-(x - c) ** 2 / w))


def test_odd_extension_of_identity(grid64):
    F = odd_extension(HalfLineFunction.from_function(grid64, lambda x: x))
    inner = slice(1, None)  # x = -L has no partner inside the box
    assert np.allclose(F.values[inner], grid64.x[inner])


def test_odd_extension_of_one_is_sign(grid64):
    with pytest.warns(RuntimeWarning, match="forces f"):
        F = odd_extension(HalfLineFunction.from_function(grid64, np.ones_like))
    expect = np.sign(grid64.x)
    expect[0] = 0.0
    assert np.array_equal(F.values, expect)


def test_odd_extension_doubles_mass(grid256):
    f = _smooth(grid256, 0)
    assert odd_extension(f).l2() == pytest.approx(np.sqrt(2) * f.l2(), rel=1e-10)


def test_zero_extension_examples(grid64):
    assert not np.any(zero_extension(HalfLineFunction(grid64, np.zeros(33))).values)
    F = zero_extension(HalfLineFunction.from_function(grid64, lambda x: np.exp(-x)))
    o = grid64.origin
    assert F.values[o] - F.values[o - 1] == pytest.approx(1.0)


def test_zero_extension_norm_ratio_bounded():
    g = make_grid(20, 256)
    ratios = [halfline_norm(_smooth(g, k), 0.3, "zero") / halfline_norm(_smooth(g, k), 0.3, "odd")
              for k in range(20)]
    # regression bound on the seeded ensemble
    assert max(ratios) < 1.0 and min(ratios) > 0.5


def test_restrict_examples(grid64):
    f = _smooth(grid64, 1)
    back = restrict(odd_extension(f))
    assert np.array_equal(back.values[1:-1], f.values[1:-1])
    assert back.values[0] == 0.0
    assert not np.any(restrict(zero_extension(HalfLineFunction(grid64, np.zeros(33)))).values)


def test_chi_cutoff():
    t = np.linspace(-1, 1, 21)
    s = TimeSeries(t, np.cos(t))
    out = chi_cutoff(s)
    assert np.all(out.values[t < 0] == 0) and np.array_equal(out.values[t >= 0], s.values[t >= 0])
    pos = TimeSeries(t[t >= 0], np.sin(t[t >= 0]))
    assert np.array_equal(chi_cutoff(pos).values, pos.values)
    assert not np.any(chi_cutoff(0 * s).values)
    a, b = chi_cutoff(s + 2 * pos_full(t)), chi_cutoff(s) + 2 * chi_cutoff(pos_full(t))
    assert np.allclose(a.values, b.values)


def pos_full(t):
    return TimeSeries(t, np.exp(t))


def test_compatibility():
    g = make_grid(20, 64)
    one = HalfLineFunction.from_function(g, lambda x: np.exp(-x))
    t = np.linspace(0, 1, 11)
    assert compatibility_check(one, TimeSeries(t, np.ones(11)), 0.6) == "pass"
    assert compatibility_check(one, TimeSeries(t, np.zeros(11)), 0.3) == "pass"
    with pytest.warns(RuntimeWarning):
        assert compatibility_check(one, TimeSeries(t, np.zeros(11)), 0.6) == "warn"


def test_zero_and_odd_norms_agree_within_four():
    g = make_grid(20, 256)
    for k in range(10):
        f = _smooth(g, 100 + k)
        a, b = halfline_norm(f, 0.0, "zero"), halfline_norm(f, 0.0, "odd")
        assert 0.25 <= a / b <= 4


@given(st.integers(0, 10_000), st.floats(-1, 1), st.floats(-5, 5))
def test_halfline_norm_is_a_norm(seed, s, c):
    g = make_grid(20, 64)
    r = np.random.default_rng(seed)
    f = HalfLineFunction(g, r.standard_normal(33) * np.exp(-np.arange(33) / 10))
    h = HalfLineFunction(g, r.standard_normal(33))
    for policy in ("odd", "zero"):
        nf = halfline_norm(f, s, policy)
        assert halfline_norm(HalfLineFunction(g, c * f.values), s, policy) == pytest.approx(abs(c) * nf, rel=1e-10,
                                                                                             abs=1e-14)
        both = halfline_norm(HalfLineFunction(g, f.values + h.values), s, policy)
        assert both <= nf + halfline_norm(h, s, policy) + 1e-12


@given(st.integers(0, 10_000))
def test_odd_extension_has_no_even_part(seed):
    g = make_grid(20, 64)
    v = np.random.default_rng(seed).standard_normal(33)
    v[0] = 0.0
    F = odd_extension(HalfLineFunction(g, v))
    assert np.max(np.abs(F.even_part())) <= 1e-14 * np.linalg.norm(v)
    assert np.array_equal(restrict(F).values[1:-1], v[1:-1])


def test_csv_loaders(tmp_path):
    g = make_grid(20, 64)
    p = tmp_path / "u0.csv"
    x = np.linspace(0, 20, 200)
    np.savetxt(p, np.column_stack([x, np.exp(-x), 0 * x]), delimiter=",", header="x,re,im", comments="")
    f = load_halfline_csv(p, g)
    assert np.allclose(f.values, np.exp(-f.x), atol=1e-3)
    q = tmp_path / "g.csv"
    t = np.linspace(0, 1, 11)
    np.savetxt(q, np.column_stack([t, t ** 2]), delimiter=",")
    s = load_timeseries_csv(q, np.linspace(0, 1, 21))
    assert np.allclose(s.values, np.linspace(0, 1, 21) ** 2, atol=3e-3)
