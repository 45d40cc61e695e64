"""PNG figures for experiment results (headless Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["write_figures"]


def _save(fig, path: Path) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return path.name


def _linear(res, out: Path) -> list:
    s = res.series
    fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))
    a.plot(s["times"], np.real(s["trace"]), label="prescribed")
    a.plot(s["times"], np.real(s["recovered"]), "--", label="recovered")
    a.set_xlabel("t")
    a.set_title("boundary trace")
    a.legend()
    err = np.abs(s["field"] - s["oracle"])
    im = b.imshow(err, aspect="auto", origin="lower",
                  extent=[s["x"][0], s["x"][-1], s["times"][0], s["times"][-1]])
    b.set_xlabel("x")
    b.set_ylabel("t")
    b.set_title("|spectral - finite difference|")
    fig.colorbar(im, ax=b)
    return [_save(fig, out / f"{s['label']}_linear_check.png")]


def _local(res, out: Path) -> list:
    s = res.series
    fig, axes = plt.subplots(1, 3, figsize=(14, 4))
    axes[0].plot(s["x"], np.abs(s["u"][-1]), label="spectral")
    axes[0].plot(s["x"], np.abs(s["u_oracle"][-1]), "--", label="oracle")
    axes[0].set_title("|u| at t = T")
    axes[0].legend()
    axes[1].plot(s["x"], s["n"][-1], label="spectral")
    axes[1].plot(s["x"], np.real(s["n_oracle"][-1]), "--", label="oracle")
    axes[1].set_title("n at t = T")
    axes[1].legend()
    axes[2].semilogy(np.arange(1, len(s["residuals"]) + 1), s["residuals"], "o-")
    axes[2].set_title("Picard residuals")
    axes[2].set_xlabel("iteration")
    return [_save(fig, out / "local_solve.png")]


def _global(res, out: Path) -> list:
    s = res.series
    fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))
    a.plot(s["times"], s["mass"] / s["mass"][0] - 1 if s["mass"][0] > 0 else s["mass"])
    a.set_title("relative mass drift")
    a.set_xlabel("t")
    for t in s["restart_times"]:
        a.axvline(t, color="0.85", lw=0.5)
    if "growth" in s:
        for scale, t, w in s["growth"]:
            b.semilogy(t, w, label=f"wave data x{scale:g}")
        b.legend()
    else:
        b.plot(s["times"], s["wave_norm"])
    b.set_title("wave norm")
    b.set_xlabel("t")
    return [_save(fig, out / "global_solve.png")]


def _estimates(res, out: Path) -> list:
    suite = res.series["suite"]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, est in sorted(suite["estimates"].items()):
        N = [b["N"] for b in est["by_N"]]
        ax.semilogx(N, [b["max"] for b in est["by_N"]], "o-", label=name)
    ax.set_xlabel("N")
    ax.set_ylabel("max ratio")
    ax.legend(fontsize=7)
    return [_save(fig, out / "estimates.png")]


def _uniqueness(res, out: Path) -> list:
    s = res.series
    fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))
    if s["wave_a"] is not None:
        a.plot(s["x_full"], s["wave_a"], label="policy a")
        a.plot(s["x_full"], s["wave_b"], "--", label="policy b")
        a.axvline(0, color="k", lw=0.5)
        a.legend()
    a.set_title("wave field on the full window")
    b.semilogy(s["times"], np.max(np.abs(s["dn"]), axis=1) + 1e-300, label="n")
    b.semilogy(s["times"], np.max(np.abs(s["du"]), axis=1) + 1e-300, label="u")
    b.set_title("twin discrepancy on x >= 0")
    b.legend()
    return [_save(fig, out / "uniqueness.png")]


def _smoothing(res, out: Path) -> list:
    s = res.series
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.loglog(s["lams"], s["tail_linear"], "o-", label="linear part")
    ax.loglog(s["lams"], s["tail_nonlinear"], "s-", label="nonlinear part")
    ax.set_xlabel("frequency threshold")
    ax.set_ylabel("tail norm")
    ax.legend()
    return [_save(fig, out / "smoothing.png")]


_FIGS = {
    "linear-kg-check": _linear,
    "linear-schrodinger-check": _linear,
    "local-solve": _local,
    "global-solve": _global,
    "estimates-lab": _estimates,
    "uniqueness-check": _uniqueness,
    "smoothing-check": _smoothing,
}


def write_figures(experiment: str, result, out: Path) -> list:
    fn = _FIGS.get(experiment)
    return fn(result, Path(out)) if fn else []
