"""Run configuration: TOML loading, per-experiment presets and validation.

Every key the tool understands appears in ``BASE`` with its default.  Each
experiment starts from ``BASE``, applies its preset from ``PRESETS``, then the
user file.  Unknown keys and ill-typed values are rejected before anything runs.
"""

from __future__ import annotations

import copy
import math
from pathlib import Path

try:  # Python >= 3.11 ships the same parser
    import tomli
except ModuleNotFoundError:  # pragma: no cover
    import tomllib as tomli

from .errors import ConfigurationError

__all__ = ["BASE", "PRESETS", "EXPERIMENTS", "load_config", "resolve", "PROFILE_KINDS", "SIGNAL_KINDS"]

EXPERIMENTS = (
    "linear-kg-check",
    "linear-schrodinger-check",
    "local-solve",
    "global-solve",
    "estimates-lab",
    "uniqueness-check",
    "smoothing-check",
    "report",
)

PROFILE_KINDS = ("zero", "gaussian", "rough", "csv")
SIGNAL_KINDS = ("zero", "power_exp", "csv")


def _profile(kind="zero", **kw):
    out = {"kind": kind, "amp": 0.0, "center": 0.0, "width": 1.0, "power": 0.0, "wavenumber": 0.0,
           "chirp": 0.0, "decay": 0.77, "window": [2.0, 18.0], "path": ""}
    out.update(kw)
    return out


def _signal(kind="zero", **kw):
    out = {"kind": kind, "amp": 0.0, "power": 1.0, "rate": 1.0, "taper": 0.0, "path": ""}
    out.update(kw)
    return out


BASE = {
    "experiment": "",
    "seed": 0,
    "grid": {"L": 20.0, "N": 256},
    "time": {"T": 0.0, "T_final": 1.0, "dt": 1e-3, "span": 3.0},
    "data": {"u0": _profile(), "n0": _profile(), "n1": _profile(), "g": _signal(), "h": _signal()},
    "regularity": {"s0": 0.0, "s1": 0.0, "a0": 0.4, "a1": 0.4, "b": 0.4},
    "solver": {"tol_fp": 1e-10, "max_iter": 30, "c_T": 0.1, "min_steps": 4},
    "fd": {"N_fd": 1024, "dt_fd": 1e-3},
    "tolerances": {
        "rel_err": 5e-2,
        "trace": 1e-2,
        "initial": 1e-8,
        "drift": 1e-4,
        "drift_ratio": 3.0,
        "even_free": 1e-12,
        "even_restart": 1e-8,
        "restarts": 10,
        "ratio": 0.5,
        "iterations": 20,
        "twin": 1e-3,
        "smoothing_margin": 0.1,
        "growth_residual": 0.1,
        "mT_factor": 2.0,
        "slope": 0.1,
    },
    "checks": {"global": ["conservation", "refinement", "oddness"], "picard_suite": 0},
    "growth": {"scales": [1.0, 4.0]},
    "twin": {"policy_a": "odd", "policy_b": "zero"},
    "smoothing": {"lam_min": 2.0, "lam_max": 0.0},
    "ensemble": {"count": 50, "sizes": [64, 128, 256], "decay": 1.0, "L": 4 * math.pi, "a_wave": 0.2,
                 "a_schrodinger": 0.2},
    "report": {"inputs": []},
    "output": {"csv_rows": 101, "plots": True},
}

_C8 = dict(center=10.0, width=4.0)

PRESETS = {
    "linear-kg-check": {
        "grid": {"N": 512},
        "time": {"T": 1.0},
        "data": {"h": _signal("power_exp", amp=1.0, power=2.0, taper=1.5)},
        "fd": {"N_fd": 2048},
    },
    "linear-schrodinger-check": {
        "grid": {"N": 512},
        "time": {"T": 1.0},
        "data": {"g": _signal("power_exp", amp=1.0, power=1.0, taper=1.5)},
        "fd": {"N_fd": 2048},
    },
    "local-solve": {
        "time": {"T": 0.5},
        "data": {
            "u0": _profile("gaussian", amp=0.5, center=4.0, width=1.0, chirp=0.5),
            "n0": _profile("gaussian", amp=0.5, center=2.0, width=1.0, power=2.0),
            "g": _signal("power_exp", amp=0.2, power=1.0),
            "h": _signal("power_exp", amp=0.2, power=2.0),
        },
    },
    "global-solve": {
        "data": {
            "u0": _profile("gaussian", amp=0.6, wavenumber=0.3, **_C8),
            "n0": _profile("gaussian", amp=0.5, **_C8),
        },
    },
    "uniqueness-check": {
        "data": {
            "u0": _profile("gaussian", amp=0.3, center=3.0, width=1.0, wavenumber=0.5),
            "n0": _profile("gaussian", amp=0.3, center=1.0, width=0.5, power=2.0),
            "n1": _profile("gaussian", amp=0.2, center=1.5, width=0.5, power=2.0),
        },
    },
    "smoothing-check": {
        "time": {"T": 0.3},
        "regularity": {"s0": 0.25},
        "data": {
            "u0": _profile("rough", amp=0.5, center=8.0, decay=0.77),
            "n0": _profile("gaussian", amp=0.3, center=8.0, width=2.0),
        },
    },
    "estimates-lab": {},
    "report": {},
}


def _merge(base: dict, over: dict, path: str = "") -> dict:
    out = copy.deepcopy(base)
    for key, val in over.items():
        where = f"{path}{key}"
        if key not in base:
            raise ConfigurationError(f"unknown config key '{where}'")
        if isinstance(base[key], dict):
            if not isinstance(val, dict):
                raise ConfigurationError(f"'{where}' must be a table")
            out[key] = _merge(base[key], val, where + ".")
        else:
            out[key] = _coerce(base[key], val, where)
    return out


def _coerce(default, val, where):
    if isinstance(default, bool):
        if not isinstance(val, bool):
            raise ConfigurationError(f"'{where}' must be a boolean")
        return val
    if isinstance(default, int) and not isinstance(default, bool):
        if isinstance(val, bool) or not isinstance(val, int):
            raise ConfigurationError(f"'{where}' must be an integer")
        return val
    if isinstance(default, float):
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise ConfigurationError(f"'{where}' must be a number")
        if not math.isfinite(val):
            raise ConfigurationError(f"'{where}' must be finite")
        return float(val)
    if isinstance(default, str):
        if not isinstance(val, str):
            raise ConfigurationError(f"'{where}' must be a string")
        return val
    if isinstance(default, list):
        if not isinstance(val, list):
            raise ConfigurationError(f"'{where}' must be an array")
        return list(val)
    return val


def _positive(cfg, section, key):
    if not cfg[section][key] > 0:
        raise ConfigurationError(f"'{section}.{key}' must be positive")


def _validate(cfg: dict, base_dir: Path) -> None:
    N = cfg["grid"]["N"]
    if N < 8 or N % 2:
        raise ConfigurationError("'grid.N' must be an even integer >= 8")
    _positive(cfg, "grid", "L")
    for key in ("dt", "T_final", "span"):
        _positive(cfg, "time", key)
    if cfg["time"]["T"] < 0:
        raise ConfigurationError("'time.T' must be >= 0 (0 selects T automatically)")
    for key in ("tol_fp", "c_T"):
        _positive(cfg, "solver", key)
    if cfg["solver"]["max_iter"] < 1 or cfg["solver"]["min_steps"] < 1:
        raise ConfigurationError("'solver.max_iter' and 'solver.min_steps' must be >= 1")
    if cfg["fd"]["N_fd"] < 16:
        raise ConfigurationError("'fd.N_fd' must be >= 16")
    _positive(cfg, "fd", "dt_fd")
    for key, val in cfg["tolerances"].items():
        if not val > 0:
            raise ConfigurationError(f"'tolerances.{key}' must be positive")
    for name in ("u0", "n0", "n1"):
        spec = cfg["data"][name]
        if spec["kind"] not in PROFILE_KINDS:
            raise ConfigurationError(f"'data.{name}.kind' must be one of {PROFILE_KINDS}")
        if spec["width"] <= 0:
            raise ConfigurationError(f"'data.{name}.width' must be positive")
        if name != "u0" and (spec["kind"] == "rough" or spec["chirp"] or spec["wavenumber"]):
            raise ConfigurationError(f"'data.{name}' must describe a real profile")
        w = spec["window"]
        if len(w) != 2 or not all(isinstance(v, (int, float)) for v in w) or not 0 <= w[0] < w[1]:
            raise ConfigurationError(f"'data.{name}.window' must be [a, b] with 0 <= a < b")
        _check_path(spec, f"data.{name}", base_dir)
    for name in ("g", "h"):
        spec = cfg["data"][name]
        if spec["kind"] not in SIGNAL_KINDS:
            raise ConfigurationError(f"'data.{name}.kind' must be one of {SIGNAL_KINDS}")
        if spec["taper"] < 0 or spec["power"] < 0:
            raise ConfigurationError(f"'data.{name}' taper and power must be >= 0")
        _check_path(spec, f"data.{name}", base_dir)
    checks = cfg["checks"]["global"]
    allowed = ("conservation", "refinement", "oddness", "growth")
    if not all(c in allowed for c in checks):
        raise ConfigurationError(f"'checks.global' entries must be among {allowed}")
    if cfg["checks"]["picard_suite"] < 0:
        raise ConfigurationError("'checks.picard_suite' must be >= 0")
    if not cfg["growth"]["scales"] or not all(isinstance(s, (int, float)) and s > 0 for s in cfg["growth"]["scales"]):
        raise ConfigurationError("'growth.scales' must be positive numbers")
    for key in ("policy_a", "policy_b"):
        if cfg["twin"][key] not in ("odd", "zero"):
            raise ConfigurationError(f"'twin.{key}' must be 'odd' or 'zero'")
    ens = cfg["ensemble"]
    if ens["count"] < 10:
        raise ConfigurationError("'ensemble.count' must be >= 10")
    sizes = ens["sizes"]
    if len(sizes) < 2 or not all(isinstance(n, int) and n >= 16 and n % 8 == 0 for n in sizes):
        raise ConfigurationError("'ensemble.sizes' needs at least two multiples of 8, each >= 16")
    if not all(isinstance(p, str) for p in cfg["report"]["inputs"]):
        raise ConfigurationError("'report.inputs' must be paths")
    if cfg["output"]["csv_rows"] < 2:
        raise ConfigurationError("'output.csv_rows' must be >= 2")


def _check_path(spec, where, base_dir):
    if spec["kind"] != "csv":
        return
    if not spec["path"]:
        raise ConfigurationError(f"'{where}.path' is required for csv data")
    p = Path(spec["path"])
    if not p.is_absolute():
        p = base_dir / p
    if not p.is_file():
        raise ConfigurationError(f"'{where}.path' not found: {p}")
    spec["path"] = str(p)


def resolve(experiment: str, user: dict | None = None, base_dir: Path | str = ".") -> dict:
    """Defaults, then the experiment preset, then ``user``; validated."""
    if experiment not in EXPERIMENTS:
        raise ConfigurationError(f"unknown experiment '{experiment}'")
    user = dict(user or {})
    named = user.pop("experiment", experiment) or experiment
    if named != experiment:
        raise ConfigurationError(f"config is for '{named}', not '{experiment}'")
    cfg = _merge(BASE, PRESETS[experiment])
    cfg = _merge(cfg, user)
    cfg["experiment"] = experiment
    _validate(cfg, Path(base_dir))
    return cfg


def load_config(path, experiment: str) -> dict:
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            user = tomli.load(fh)
    except FileNotFoundError as exc:
        raise ConfigurationError(f"config file not found: {path}") from exc
    except tomli.TOMLDecodeError as exc:
        raise ConfigurationError(f"malformed TOML in {path}: {exc}") from exc
    return resolve(experiment, user, path.parent)
