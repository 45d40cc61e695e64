import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kgs_halfline.grid import Field, make_grid
from kgs_halfline.flows import halfwave_flow, kg_flow, make_phi, phi_solution, schrodinger_flow


def _real(grid, seed, decay=5.0):
    r = np.random.default_rng(seed)
    return Field(grid, r.standard_normal(grid.N) * np.exp(-(grid.x / decay) ** 2))


def test_schrodinger_examples(grid64):
    k = grid64.xi[2]
    u0 = Field(grid64, np.exp(1j * k * grid64.x))
    assert np.allclose(schrodinger_flow(u0, 0.0).values, u0.values)
    assert np.allclose(schrodinger_flow(u0, 0.3).values, np.exp(-1j * k * k * 0.3) * u0.values, atol=1e-12)
    w = Field(grid64, _real(grid64, 1).values + 0j)
    assert schrodinger_flow(w, 2.0).l2() == pytest.approx(w.l2(), rel=1e-12)


def test_halfwave_examples(grid64):
    f = Field(grid64, _real(grid64, 2).values + 0j)
    assert np.allclose(halfwave_flow(f, 0.0).values, f.values)
    assert halfwave_flow(f, 1.3, -1).l2() == pytest.approx(f.l2(), rel=1e-12)
    two = halfwave_flow(halfwave_flow(f, 0.4, 1), 0.5, 1)
    assert np.allclose(two.values, halfwave_flow(f, 0.9, 1).values, atol=1e-12)


def test_kg_single_modes(grid64):
    k = grid64.xi[3]
    w = np.sqrt(1 + k * k)
    c = Field(grid64, np.cos(k * grid64.x))
    z = Field(grid64, np.zeros(64))
    t = 0.8
    n, nt = kg_flow(c, z, t)
    assert np.allclose(n.values, np.cos(t * w) * c.values, atol=1e-12)
    assert np.allclose(nt.values, -w * np.sin(t * w) * c.values, atol=1e-12)
    n, _ = kg_flow(z, c, t)
    assert np.allclose(n.values, np.sin(t * w) / w * c.values, atol=1e-12)


def test_phi_examples(grid64):
    n0 = _real(grid64, 3)
    z = Field(grid64, np.zeros(64))
    p = make_phi(n0, z)
    assert np.allclose(p.plus.values, n0.values) and np.allclose(p.minus.values, n0.values)
    n1 = _real(grid64, 4)
    q = make_phi(z, n1)
    from kgs_halfline.grid import d_inverse
    assert np.allclose(q.plus.values, -1j * d_inverse(n1).values)
    assert np.allclose(q.minus.values, 1j * d_inverse(n1).values)
    r = make_phi(n0, n1)
    assert np.allclose(r.n0.values, n0.values, atol=1e-12)


@given(st.integers(0, 10_000), st.floats(0, 1))
def test_kg_matches_halfwave_representation(seed, t):
    g = make_grid(20, 64)
    n0, n1 = _real(g, seed), _real(g, seed + 7)
    n, _ = kg_flow(n0, n1, t)
    alt = phi_solution(make_phi(n0, n1), t)
    assert np.max(np.abs(n.values - alt.values)) <= 1e-10 * max(1.0, np.abs(n.values).max())


@given(st.integers(0, 10_000), st.floats(0, 5))
def test_kg_preserves_oddness(seed, t):
    g = make_grid(20, 64)
    a, b = _real(g, seed).values, _real(g, seed + 1).values
    odd = lambda v: Field(g, 0.5 * (v - np.roll(np.flip(v), 1)))
    n, _ = kg_flow(odd(a), odd(b), t)
    assert np.max(np.abs(n.even_part())) <= 1e-12 * max(np.linalg.norm(n.values), 1.0)


def test_nt_is_time_derivative(grid256):
    n0 = Field(grid256, np.exp(-(grid256.x - 2) ** 2))
    n1 = Field(grid256, np.zeros(256))
    t, dt = 0.5, 1e-3
    mid = kg_flow(n0, n1, t)[1].values
    fd = (kg_flow(n0, n1, t + dt)[0].values - kg_flow(n0, n1, t - dt)[0].values) / (2 * dt)
    assert np.max(np.abs(fd - mid)) < 1e-5
