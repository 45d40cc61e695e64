import json
import math
import subprocess
import sys

import numpy as np
import pytest

from kgs_halfline.cli import main, to_json, write_atomic
from kgs_halfline.config import BASE, EXPERIMENTS, load_config, resolve
from kgs_halfline.errors import ConfigurationError

ZERO_GLOBAL = """
experiment = "global-solve"
[grid]
N = 64
[time]
T_final = 1.0
dt = 0.01
[data.u0]
kind = "zero"
[data.n0]
kind = "zero"
[output]
plots = false
"""


def _write(tmp_path, text, name="run.toml"):
    p = tmp_path / name
    p.write_text(text)
    return p


# --- configuration ------------------------------------------------------------

def test_every_experiment_resolves():
    for name in EXPERIMENTS:
        cfg = resolve(name)
        assert cfg["experiment"] == name
        assert set(cfg) == set(BASE)


def test_preset_values():
    cfg = resolve("linear-kg-check")
    assert cfg["grid"] == {"L": 20.0, "N": 512}
    h = cfg["data"]["h"]
    assert (h["kind"], h["amp"], h["power"]) == ("power_exp", 1.0, 2.0)


def test_user_values_override_and_coerce():
    cfg = resolve("local-solve", {"grid": {"L": 30}, "solver": {"max_iter": 12}})
    assert cfg["grid"]["L"] == 30.0 and isinstance(cfg["grid"]["L"], float)
    assert cfg["solver"]["max_iter"] == 12


@pytest.mark.parametrize("user, fragment", [
    ({"grid": {"N": 7}}, "grid.N"),
    ({"grid": {"M": 7}}, "unknown"),
    ({"grid": {"L": "wide"}}, "number"),
    ({"solver": {"max_iter": 2.5}}, "integer"),
    ({"output": {"plots": 1}}, "boolean"),
    ({"time": {"dt": -1.0}}, "positive"),
    ({"data": {"u0": {"kind": "triangle"}}}, "kind"),
    ({"data": {"n0": {"kind": "rough"}}}, "real profile"),
    ({"data": {"g": {"kind": "csv"}}}, "path"),
    ({"ensemble": {"count": 3}}, "count"),
    ({"checks": {"global": ["speed"]}}, "checks.global"),
    ({"experiment": "local-solve"}, "not"),
])
def test_invalid_values_rejected(user, fragment):
    with pytest.raises(ConfigurationError, match=fragment):
        resolve("global-solve", user)


def test_unknown_experiment():
    with pytest.raises(ConfigurationError):
        resolve("solve-everything")


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigurationError, match="not found"):
        load_config(tmp_path / "missing.toml", "local-solve")
    with pytest.raises(ConfigurationError, match="malformed"):
        load_config(_write(tmp_path, "[grid\nN = 4"), "local-solve")


def test_csv_paths_resolve_relative_to_config(tmp_path):
    (tmp_path / "g.csv").write_text("0,0\n1,1\n")
    cfg = load_config(_write(tmp_path, '[data.g]\nkind = "csv"\npath = "g.csv"\n'), "linear-schrodinger-check")
    assert cfg["data"]["g"]["path"] == str(tmp_path / "g.csv")


# --- json helpers -----------------------------------------------------------------

def test_json_cleaning():
    text = to_json({"b": np.float64(1 / 3), "a": [np.int64(2), math.inf, math.nan], "c": np.array([True])})
    data = json.loads(text)
    assert list(data) == ["a", "b", "c"]
    assert data["a"] == [2, "inf", "nan"]
    assert data["b"] == 0.3333333333
    assert data["c"] == [True]


def test_atomic_write_leaves_no_temp(tmp_path):
    p = tmp_path / "x.json"
    write_atomic(p, "one")
    write_atomic(p, "two")
    assert p.read_text() == "two"
    assert [q.name for q in tmp_path.iterdir()] == ["x.json"]


# --- command line -------------------------------------------------------------------

@pytest.mark.parametrize("text", ["[grid]\nN = 7\n", "[grid\n", "[grid]\nwidth = 3\n", 'seed = "one"\n'])
def test_bad_config_exit_two_without_artifacts(tmp_path, text, capsys):
    out = tmp_path / "out"
    code = main(["global-solve", "--config", str(_write(tmp_path, text)), "--out", str(out)])
    assert code == 2
    assert not out.exists()
    assert "invalid config" in capsys.readouterr().err


def test_missing_arguments():
    assert main([]) != 0
    assert main(["global-solve"]) != 0


def test_zero_data_global_solve_passes_and_is_deterministic(tmp_path):
    cfg = _write(tmp_path, ZERO_GLOBAL)
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["global-solve", "--config", str(cfg), "--out", str(a)]) == 0
    assert main(["global-solve", "--config", str(cfg), "--out", str(b)]) == 0
    ra = (a / "report.json").read_bytes()
    assert ra == (b / "report.json").read_bytes()
    report = json.loads(ra)
    assert report["passed"] is True
    assert report["config"]["grid"]["N"] == 64
    assert all(item["passed"] for item in report["items"].values())
    for name in report["artifacts"]:
        assert (a / name).is_file()
    assert any(name.endswith(".csv") for name in report["artifacts"])


def test_report_aggregates(tmp_path):
    cfg = _write(tmp_path, ZERO_GLOBAL)
    runs = tmp_path / "runs"
    assert main(["global-solve", "--config", str(cfg), "--out", str(runs / "global-solve")]) == 0
    rep_cfg = _write(tmp_path, "", "report.toml")
    assert main(["report", "--config", str(rep_cfg), "--out", str(runs / "report")]) == 0
    summary = (runs / "report" / "summary.txt").read_text()
    assert summary.startswith("global-solve: PASS")
    agg = json.loads((runs / "report" / "report.json").read_text())
    assert agg["passed"] is True and agg["experiments"][0]["experiment"] == "global-solve"


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "kgs_halfline.cli", "local-solve", "--config",
                          str(_write(tmp_path, "[grid]\nN = 9\n")), "--out", str(tmp_path / "o")],
                         capture_output=True, text=True)
    assert out.returncode == 2
    assert not (tmp_path / "o").exists()


def test_figures_written(tmp_path):
    cfg = _write(tmp_path, ZERO_GLOBAL.replace("plots = false", "plots = true"))
    out = tmp_path / "fig"
    assert main(["global-solve", "--config", str(cfg), "--out", str(out)]) == 0
    pngs = sorted(p.name for p in out.glob("*.png"))
    assert pngs == ["global_solve.png"]
    assert (out / "global_solve.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_profile_builders():
    from kgs_halfline.experiments import profile_function, signal_function
    from kgs_halfline.grid import make_grid
    cfg = resolve("smoothing-check")
    grid = make_grid(cfg["grid"]["L"], cfg["grid"]["N"])
    rough = profile_function(cfg["data"]["u0"], grid)
    x = grid.x[grid.origin:]
    assert np.max(np.abs(rough(x))) == pytest.approx(0.5)
    assert np.max(np.abs(rough(x[x <= 0.5]))) == 0.0  # window edge sits at 2 - 1.5
    g = signal_function(resolve("local-solve")["data"]["g"])
    t = np.linspace(0, 3, 7)
    assert np.allclose(g(t), 0.2 * t * np.exp(-t))
    assert signal_function(resolve("local-solve")["data"]["n1"] | {"kind": "zero"}) is None
