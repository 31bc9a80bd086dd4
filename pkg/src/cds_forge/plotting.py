"""Figures for benchmark reports, written alongside the TSV tables."""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# fixed metadata keeps repeated renders byte-stable
_PNG_METADATA = {"Software": None}


def _style(ax, xlabel: str, ylabel: str) -> None:
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)


def plot_ratios(rows: Sequence, path: str) -> str:
    """Empirical greedy/opt ratio per instance against its guarantee."""
    solved = [r for r in rows if r.ratio is not None]
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [float(r.coefficient) for r in solved]
    ys = [float(r.ratio) for r in solved]
    colors = {1: "tab:blue", 2: "tab:orange", 3: "tab:green"}
    for m in sorted({r.m for r in solved}):
        pts = [(x, y) for x, y, r in zip(xs, ys, solved) if r.m == m]
        ax.scatter(*zip(*pts), s=12, alpha=0.7, label=f"m = {m}", color=colors.get(m))
    if xs:
        hi = max(xs)
        ax.plot([1, hi], [1, hi], color="black", lw=1, ls="--", label="guarantee")
    _style(ax, "2 H(max degree + m - 1)", "greedy cost / optimum")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


def plot_scaling(rows: Sequence, path: str) -> str:
    """Mean star-search time per greedy iteration against n, log-log."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ns = [r.n for r in rows]
    ts = [r.search_seconds for r in rows]
    ax.loglog(ns, ts, marker="o", label="measured")
    if ns:
        ax.loglog(ns, [ts[0] * (n / ns[0]) ** 2 for n in ns], ls="--", color="grey", label="n^2 reference")
    _style(ax, "n", "seconds per star search")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


def render_bench_figures(rows: Sequence, directory: str, scaling: Sequence = ()) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    written = []
    if rows:
        written.append(plot_ratios(rows, os.path.join(directory, "ratios.png")))
    if scaling:
        written.append(plot_scaling(scaling, os.path.join(directory, "star_search_scaling.png")))
    return written
