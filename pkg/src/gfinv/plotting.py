"""PNG figures for CLI reports (headless Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = [
    "plot_moments",
    "plot_invariants",
    "plot_singular_values",
    "plot_discovery",
    "plot_verify",
]

_STYLE = {
    "figure.dpi": 100,
    "savefig.dpi": 120,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
}


def _save(fig, outdir, name) -> Path:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / name
    fig.tight_layout()
    # fixed metadata keeps reruns byte-identical
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def _bars(ax, labels, values, ylabel):
    values = np.asarray(values, dtype=float)
    colors = ["tab:blue" if v >= 0 else "tab:red" for v in values]
    ax.bar(range(len(values)), values, color=colors)
    ax.set_xticks(range(len(values)))
    ax.set_xticklabels(labels, rotation=60 if len(labels) > 8 else 0, ha="right" if len(labels) > 8 else "center")
    if np.any(values):
        span = np.max(np.abs(values[values != 0])) / max(np.min(np.abs(values[values != 0])), 1e-300)
        if span > 1e3:
            ax.set_yscale("symlog", linthresh=max(np.min(np.abs(values[values != 0])), 1e-12))
    ax.set_ylabel(ylabel)


def plot_moments(raw: dict, central: dict, outdir) -> list[Path]:
    with plt.rc_context(_STYLE):
        fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
        _bars(axes[0], list(raw), list(raw.values()), "raw moment")
        axes[0].set_title("raw")
        _bars(axes[1], list(central), list(central.values()), "central moment")
        axes[1].set_title("central")
        return [_save(fig, outdir, "moments.png")]


def plot_invariants(values: list[dict], outdir, campaign: list[dict] | None = None) -> list[Path]:
    """Invariant values (red bars negative) and, optionally, per-map errors."""
    paths = []
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(max(4, 0.45 * len(values) + 2), 3.5))
        _bars(ax, [v["name"] for v in values], [v["value"] for v in values], "normalized value")
        paths.append(_save(fig, outdir, "invariants.png"))
        if campaign:
            fig, ax = plt.subplots(figsize=(max(4, 0.45 * len(campaign) + 2), 3.5))
            for i, row in enumerate(campaign):
                errs = np.maximum(np.asarray(row["rel_errs"], dtype=float), 1e-18)
                ax.scatter(np.full(len(errs), i), errs, s=10, color="tab:blue")
            ax.axhline(campaign[0]["tol"], color="tab:red", lw=1, ls="--", label="tolerance")
            ax.set_yscale("log")
            ax.set_xticks(range(len(campaign)))
            ax.set_xticklabels([r["name"] for r in campaign], rotation=60, ha="right")
            ax.set_ylabel("relative error after transform")
            ax.legend(frameon=False)
            paths.append(_save(fig, outdir, "invariance.png"))
    return paths


def plot_singular_values(trials: list[dict], outdir, tol: float = 1e-9) -> list[Path]:
    """Normalised singular values of the Jacobian, one line per trial point."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(5, 3.5))
        for t, row in enumerate(trials):
            sv = np.maximum(np.asarray(row["singular_values"], dtype=float), 1e-20)
            ax.semilogy(np.arange(1, len(sv) + 1), sv, marker="o", ms=3, lw=1, label=f"trial {t} (rank {row['rank']})")
        ax.axhline(tol, color="grey", ls=":", lw=1)
        ax.set_xlabel("index")
        ax.set_ylabel("singular value / largest")
        ax.legend(frameon=False, fontsize=7)
        return [_save(fig, outdir, "singular_values.png")]


def plot_discovery(counts: dict, outdir) -> list[Path]:
    stages = ["enumerated", "zero", "duplicate", "skew", "candidates", "dependent", "independent"]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(6, 3.5))
        vals = [counts.get(s, 0) for s in stages]
        ax.bar(stages, vals, color="tab:blue")
        for i, v in enumerate(vals):
            ax.text(i, v, str(v), ha="center", va="bottom", fontsize=7)
        ax.set_ylabel("cores")
        plt.setp(ax.get_xticklabels(), rotation=30, ha="right")
        return [_save(fig, outdir, "discovery_stages.png")]


def plot_verify(catalog: dict, outdir) -> list[Path]:
    """Scalar relating each translated core to its reference polynomial."""
    from fractions import Fraction

    names, vals, ok = [], [], []
    for group, rows in catalog.items():
        for r in rows:
            names.append(r["name"])
            vals.append(float(Fraction(r["scalar"])) if r["scalar"] is not None else 0.0)
            ok.append(r["match"])
    if not names:
        return []
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(max(4, 0.3 * len(names) + 2), 3.5))
        ax.bar(range(len(names)), vals, color=["tab:blue" if m else "tab:red" for m in ok])
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names, rotation=70, ha="right", fontsize=7)
        ax.set_ylabel("core / reference scalar")
        return [_save(fig, outdir, "catalog_scalars.png")]
