"""Rate-region figures: the three threshold curves per read count K.

Rendered headless; output format follows the file extension (svg, png,
pdf, ...).  One panel per K, optional empirical operating points overlaid.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .theory import (
    capacity_limit,
    kv_validity_bound,
    rate_threshold_kv,
    rate_threshold_majority,
)

__all__ = ["plot_rate_region"]


def plot_rate_region(
    out_path: str,
    k_reads_values=(2, 3, 4),
    p_points: int = 256,
    operating_points=None,
) -> str:
    """Save a rate-vs-p comparison figure and return the output path.

    Each panel shows, for one K, the large-alphabet capacity limit and the
    soft-interpolation and majority thresholds over p in (0, p_valid],
    where p_valid = K^(-1/(K-1)) bounds the soft threshold's validity.
    operating_points, if given, is an iterable of (K, p, rate, success)
    tuples scattered onto the matching panel and colored by success rate.
    """
    k_reads_values = list(k_reads_values)
    if not k_reads_values:
        raise ValueError("need at least one K value")
    fig, axes = plt.subplots(
        1,
        len(k_reads_values),
        figsize=(4.0 * len(k_reads_values), 3.4),
        sharey=True,
        squeeze=False,
    )
    scatter = None
    for ax, k_reads in zip(axes[0], k_reads_values):
        p_valid = kv_validity_bound(k_reads)
        ps = np.linspace(1e-3, p_valid, p_points)
        ax.plot(ps, [capacity_limit(k_reads, p) for p in ps], label="capacity limit")
        ax.plot(
            ps,
            [rate_threshold_kv(k_reads, p) for p in ps],
            label="soft interpolation",
        )
        ax.plot(
            ps,
            [rate_threshold_majority(k_reads, p) for p in ps],
            label="majority + erasure",
        )
        ax.axvline(p_valid, color="gray", linestyle=":", linewidth=0.8)
        pts = [
            (p, rate, success)
            for (kk, p, rate, success) in (operating_points or ())
            if kk == k_reads
        ]
        if pts:
            px, py, pc = zip(*pts)
            scatter = ax.scatter(
                px, py, c=pc, cmap="RdYlGn", vmin=0.0, vmax=1.0,
                edgecolors="black", linewidths=0.4, zorder=3,
            )
        ax.set_title(f"K = {k_reads}")
        ax.set_xlabel("substitution probability p")
        ax.set_xlim(0.0, min(1.0, p_valid * 1.05))
        ax.set_ylim(0.0, 1.02)
        ax.grid(alpha=0.25)
    axes[0][0].set_ylabel("rate R")
    axes[0][0].legend(loc="lower left", fontsize=8)
    if scatter is not None:
        fig.colorbar(scatter, ax=axes[0][-1], label="empirical success rate")
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
    return out_path
