"""Figure rendering for sweep curves and validation reports.

The CSV files remain the canonical output; these helpers draw the same data
so a sweep or validation run leaves a picture next to the numbers.  The Agg
backend is forced so rendering works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_sweep(rows, path, logx: bool = True, logy: bool = True, title: str = "") -> None:
    """Draw one line per curve label: corrected outage vs the swept value."""
    curves: dict[str, list] = {}
    for row in rows:
        curves.setdefault(row.curve_label, []).append((row.sweep_value, row.pout_corrected))
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for label, pts in curves.items():
        xs, ys = zip(*pts)
        ax.plot(xs, ys, lw=1.4, label=label)
    if logx:
        ax.set_xscale("log")
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel("swept value")
    ax.set_ylabel("outage probability (corrected)")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.4)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_validation(report, path) -> None:
    """Scatter the corrected closed form against Monte Carlo, 3-sigma bars."""
    x = np.array([r.pout_corrected for r in report.rows])
    y = np.array([r.mc_value for r in report.rows])
    err = 3.0 * np.array([r.mc_stderr for r in report.rows])
    fig, ax = plt.subplots(figsize=(5.5, 5.0))
    ax.errorbar(x, y, yerr=err, fmt="o", ms=4, capsize=3, lw=1)
    positive = [v for v in np.concatenate([x, y]) if v > 0]
    lim_lo = max(1e-6, 0.5 * min(positive, default=1e-6))
    ax.plot([lim_lo, 1.0], [lim_lo, 1.0], "k--", lw=1, label="y = x")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("closed form (corrected)")
    ax.set_ylabel("Monte Carlo estimate")
    ax.grid(True, which="both", alpha=0.4)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
