"""Figure rendering for reports. File output only, no display."""

from __future__ import annotations

import os
from typing import TYPE_CHECKING

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .stats import Undefined

if TYPE_CHECKING:
    from .classify import ClassReport
    from .stats import CorrelationMatrix, ReproReport


def save_correlation_heatmap(matrix: "CorrelationMatrix", path: str) -> str:
    ids = matrix.feature_ids
    n = len(ids)
    grid = [
        [c if isinstance(c, float) else float("nan") for c in row]
        for row in matrix.cells
    ]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * n + 2), max(3.5, 0.5 * n + 1.5)))
    im = ax.imshow(grid, vmin=-1.0, vmax=1.0, cmap="RdBu_r")
    ax.set_xticks(range(n), ids, rotation=45, ha="right", fontsize=7)
    ax.set_yticks(range(n), ids, fontsize=7)
    for i in range(n):
        for j in range(n):
            cell = matrix.cells[i][j]
            text = "n/a" if isinstance(cell, Undefined) else f"{cell:.2f}"
            ax.text(j, i, text, ha="center", va="center", fontsize=6)
    fig.colorbar(im, ax=ax, shrink=0.8)
    ax.set_title("feature correlation (pairwise complete)")
    return _save(fig, path)


def save_leaf_distribution(report: "ClassReport", path: str) -> str:
    labels = sorted(report.counts)
    counts = [report.counts[k] for k in labels]
    fig, ax = plt.subplots(figsize=(max(5.0, 0.8 * len(labels) + 2), 4.0))
    bars = ax.bar(range(len(labels)), counts, color="#4878a8")
    ax.set_xticks(range(len(labels)), labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("entries")
    ax.set_title(f"class distribution ({report.tree} tree, n={report.total})")
    ax.bar_label(bars, fontsize=8)
    return _save(fig, path)


def save_kappa_bars(report: "ReproReport", path: str) -> str:
    fids = list(report.feature_ids)
    means = []
    for fid in fids:
        m = report.agreement(fid).mean_kappa
        means.append(m if isinstance(m, float) else 0.0)
    colors = []
    for fid in fids:
        verdict = report.agreement(fid).verdict
        colors.append(
            {"Keep": "#3a7d44", "Review": "#d9a404", "Abandon": "#b23a48"}[verdict]
        )
    fig, ax = plt.subplots(figsize=(max(5.0, 0.6 * len(fids) + 2), 4.0))
    ax.bar(range(len(fids)), means, color=colors)
    ax.axhline(report.review_below, color="#888", linestyle="--", linewidth=1)
    ax.axhline(report.abandon_below, color="#888", linestyle=":", linewidth=1)
    ax.set_xticks(range(len(fids)), fids, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("mean pairwise kappa")
    ax.set_ylim(-0.1, 1.05)
    ax.set_title(f"feature reproducibility across {len(report.copy_ids)} copies")
    return _save(fig, path)


def _save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
