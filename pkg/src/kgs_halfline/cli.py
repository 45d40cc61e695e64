"""Command line: ``kgs-halfline <subcommand> --config <file.toml> [--out <dir>]``.

Exit codes: 0 all items pass, 1 an item failed or the run raised, 2 bad config.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from .config import EXPERIMENTS, load_config
from .errors import ConfigurationError

__all__ = ["main", "to_json", "write_atomic"]

SIG_DIGITS = 10


def _clean(obj):
    """JSON-ready copy: numpy scalars unwrapped, floats rounded, non-finite values as strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return float(f"{v:.{SIG_DIGITS}g}")
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    return obj


def to_json(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, indent=2) + "\n"


def write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_csv(path: Path, header, data) -> None:
    import io

    buf = io.StringIO()
    np.savetxt(buf, np.asarray(data, dtype=float), delimiter=",", header=",".join(header), comments="",
               fmt="%.10g")
    write_atomic(path, buf.getvalue())


def _summary_lines(report: dict) -> list:
    lines = [f"{report['experiment']}: {'PASS' if report['passed'] else 'FAIL'}"]
    for name, it in sorted(report.get("items", {}).items()):
        mark = "PASS" if it["passed"] else "FAIL"
        lines.append(f"  [{mark}] {name}: {it['value']} {it['relation']} {it['threshold']}")
    if report.get("error"):
        lines.append(f"  error: {report['error']}")
    return lines


def _run_report(cfg: dict, cfg_dir: Path, out: Path) -> dict:
    paths = [Path(p) if Path(p).is_absolute() else cfg_dir / p for p in cfg["report"]["inputs"]]
    if not paths:
        paths = sorted(p for p in out.parent.glob("*/report.json") if p.parent != out)
    reports = []
    for p in paths:
        with open(p, encoding="utf-8") as fh:
            reports.append(json.load(fh))
    reports.sort(key=lambda r: r.get("experiment", ""))
    lines = []
    for r in reports:
        lines.extend(_summary_lines(r))
    return {
        "experiments": [{"experiment": r.get("experiment"), "passed": r.get("passed"),
                         "items": {k: v["passed"] for k, v in sorted(r.get("items", {}).items())}}
                        for r in reports],
        "passed": bool(reports) and all(r.get("passed") for r in reports),
        "summary": lines,
    }


def run(experiment: str, config_path, out_dir=None) -> int:
    try:
        cfg = load_config(config_path, experiment)
    except ConfigurationError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    out = Path(out_dir) if out_dir else Path("runs") / experiment
    out.mkdir(parents=True, exist_ok=True)
    report = {"experiment": experiment, "config": cfg}
    status = 0
    if experiment == "report":
        try:
            agg = _run_report(cfg, Path(config_path).parent, out)
        except (OSError, ValueError, KeyError) as exc:
            print(f"report failed: {exc}", file=sys.stderr)
            return 1
        report.update(agg)
        write_atomic(out / "summary.txt", "\n".join(agg["summary"]) + "\n")
        report["artifacts"] = ["report.json", "summary.txt"]
        write_atomic(out / "report.json", to_json(report))
        print("\n".join(agg["summary"]))
        return 0 if report["passed"] else 1

    from .experiments import RUNNERS

    artifacts = ["report.json"]
    try:
        res = RUNNERS[experiment](cfg)
    except Exception as exc:  # the report must still record the failure
        report.update({"items": {"run_completed": {"value": False, "threshold": True, "relation": "==",
                                                    "passed": False}},
                       "passed": False, "error": f"{type(exc).__name__}: {exc}"})
        report["artifacts"] = artifacts
        write_atomic(out / "report.json", to_json(report))
        print("\n".join(_summary_lines(report)), file=sys.stderr)
        return 1
    for name, (header, data) in sorted(res.tables.items()):
        _write_csv(out / f"{name}.csv", header, data)
        artifacts.append(f"{name}.csv")
    if cfg["output"]["plots"]:
        from .plots import write_figures

        artifacts.extend(write_figures(experiment, res, out))
    report.update({"items": res.items, "metrics": res.metrics, "warnings": res.warnings,
                   "passed": res.passed, "artifacts": sorted(artifacts)})
    write_atomic(out / "report.json", to_json(report))
    print("\n".join(_summary_lines(report)))
    if not res.passed:
        status = 1
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kgs-halfline", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="TOML run configuration")
        sp.add_argument("--out", default=None, help="output directory (default runs/<subcommand>)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(args.command, args.config, args.out)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
