"""Acceptance criteria, each run from the pinned configs under ``configs/``.

Run alone with ``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``;
one PASS/FAIL line per criterion is printed in the session summary.
"""

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from kgs_halfline.config import load_config
from kgs_halfline.experiments import RUNNERS
from kgs_halfline.flows import kg_flow
from kgs_halfline.grid import Field, make_grid

CONFIGS = Path(__file__).resolve().parents[1] / "configs"

_cache = {}


def _run(name, experiment=None):
    """Run a shipped config once per session; returns (result, config, seconds)."""
    if name not in _cache:
        experiment = experiment or name
        cfg = load_config(CONFIGS / f"{name}.toml", experiment)
        start = time.perf_counter()
        res = RUNNERS[experiment](cfg)
        _cache[name] = (res, cfg, time.perf_counter() - start)
    return _cache[name]


def _value(res, item):
    return res.items[item]["value"]


def test_criterion_01_kg_boundary_operator(acceptance_log):
    res, _, secs = _run("linear-kg-check")
    rel, trace, init = (_value(res, k) for k in ("relative_l2_error", "trace_recovery", "initial_field"))
    ok = rel <= 5e-2 and trace <= 1e-2 and init <= 1e-8 and secs <= 60
    acceptance_log(1, "linear KG boundary formula", ok,
                   f"rel_err={rel:.2e} trace={trace:.2e} t0={init:.2e} runtime={secs:.1f}s")
    assert ok


def test_criterion_02_schrodinger_boundary_operator(acceptance_log):
    res, _, _ = _run("linear-schrodinger-check")
    rel, trace = _value(res, "relative_l2_error"), _value(res, "trace_recovery")
    ok = rel <= 5e-2 and trace <= 1e-2
    acceptance_log(2, "linear Schrodinger boundary formula", ok, f"rel_err={rel:.2e} trace={trace:.2e}")
    assert ok


def test_criterion_03_mass_conservation(acceptance_log):
    res, cfg, _ = _run("global-solve")
    assert cfg["grid"]["N"] == 256 and cfg["time"]["dt"] == 1e-3 and cfg["time"]["T_final"] == 1.0
    drift, ratio = _value(res, "l2_conservation"), _value(res, "drift_refinement")
    ok = drift <= 1e-4 and ratio >= 3
    acceptance_log(3, "L2 conservation", ok, f"drift={drift:.2e} dt-halving ratio={ratio:.2f}")
    assert ok


def test_criterion_04_oddness(acceptance_log):
    res, _, _ = _run("global-solve")
    free, restart, count = (_value(res, k) for k in ("free_flow_even_part", "restart_even_part", "restart_count"))
    # an independent free-flow check on random odd data, away from the configured preset
    g = make_grid(20.0, 256)
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(5):
        a, b = rng.standard_normal((2, g.N)) * np.exp(-(g.x / 6) ** 2)
        odd = lambda v: Field(g, 0.5 * (v - np.roll(np.flip(v), 1)))
        for t in np.linspace(0, 3, 7):
            n, _ = kg_flow(odd(a), odd(b), float(t))
            worst = max(worst, float(np.max(np.abs(n.even_part()))))
    ok = free <= 1e-12 and worst <= 1e-12 and restart <= 1e-8 and count >= 10
    acceptance_log(4, "oddness preservation", ok,
                   f"free={max(free, worst):.1e} restarts={count} restart_even={restart:.1e}")
    assert ok


def test_criterion_05_picard_contraction(acceptance_log):
    res, cfg, _ = _run("local-solve")
    assert cfg["checks"]["picard_suite"] >= 1
    ratio, iters, norms = (_value(res, k) for k in ("suite_picard_ratio", "suite_picard_iterations",
                                                    "suite_data_norms"))
    ok = norms <= 1 and ratio <= 0.5 and iters <= 20
    acceptance_log(5, "Picard contraction", ok,
                   f"members={len(res.metrics['suite'])} max_norm={norms:.2f} max_ratio={ratio:.2e} "
                   f"max_iterations={iters}")
    assert ok


def test_criterion_06_solver_vs_oracle(acceptance_log):
    res, _, _ = _run("local-solve")
    err = res.items["oracle_agreement"]
    ok = err["value"] <= 5e-2
    acceptance_log(6, "nonlinear solve vs oracle", ok, f"rel_err u={err['u']:.2e} n={err['n']:.2e}")
    assert ok


def test_criterion_07_extension_independence(acceptance_log):
    res, _, _ = _run("uniqueness-check")
    d = _value(res, "twin_agreement")
    ok = d <= 1e-3
    acceptance_log(7, "extension independence", ok, f"max relative discrepancy={d:.2e}")
    assert ok


def test_criterion_08_smoothing(acceptance_log):
    res, cfg, _ = _run("smoothing-check")
    a0 = cfg["regularity"]["a0"]
    assert a0 == 0.4 and a0 < min(0.5, cfg["regularity"]["s1"] + 0.5)
    gap = _value(res, "schrodinger_smoothing_gap")
    ok = gap is not None and gap >= a0 - 0.1
    acceptance_log(8, "smoothing of the nonlinear part", ok, f"tail-slope gap={gap:.3f} (need {a0 - 0.1:.1f})")
    assert ok


def test_criterion_09_growth_shape(acceptance_log):
    res, cfg, _ = _run("growth", "global-solve")
    assert cfg["time"]["T_final"] == 2.0 and cfg["growth"]["scales"] == [1.0, 4.0]
    resid, spread = _value(res, "growth_log_linear"), _value(res, "mT_independence")
    ok = resid is not None and spread is not None and resid <= 0.1 and spread <= 2
    acceptance_log(9, "growth bound shape", ok, f"fit residual/range={resid:.3f} mT spread={spread:.3f}")
    assert ok


def test_criterion_10_estimate_lab(acceptance_log):
    res, cfg, secs = _run("estimates-lab")
    assert cfg["ensemble"]["count"] == 50 and cfg["ensemble"]["sizes"] == [64, 128, 256]
    slopes = {k[: -len("_refinement")]: v["value"] for k, v in res.items.items()}
    worst = max(slopes.values())
    ok = len(slopes) == 7 and worst <= 0.1 and secs <= 300 and all(math.isfinite(s) for s in slopes.values())
    acceptance_log(10, "estimate lab refinement", ok, f"{len(slopes)} estimates, max slope={worst:.3f} "
                                                      f"runtime={secs:.0f}s")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
