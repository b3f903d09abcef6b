"""Figure rendering for the CLI report paths (headless Agg backend).

Each renderer writes a PNG next to the delimited output it illustrates and
returns the path written.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_report_summary(reports, path):
    """Observed value vs. bound per report, on a symmetric log scale."""
    names = [r.name for r in reports]
    observed = [max(r.max_observed, 0.0) for r in reports]
    bounds = [r.bound for r in reports]
    pos = np.arange(len(names))
    fig, ax = plt.subplots(figsize=(7, 3 + 0.4 * len(names)))
    ax.barh(pos + 0.18, observed, height=0.34, label="observed", color="#2b6cb0")
    ax.barh(pos - 0.18, bounds, height=0.34, label="bound", color="#cbd5e0")
    for i, r in enumerate(reports):
        ax.text(
            max(observed[i], bounds[i]),
            pos[i],
            " pass" if r.passed else " FAIL",
            va="center",
            color="#276749" if r.passed else "#c53030",
        )
    ax.set_yticks(pos, names)
    ax.set_xscale("symlog", linthresh=1e-12)
    ax.set_xlabel("value (symlog)")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def render_invariant_drift(rows, path):
    """Drift against step for each named quantity.

    rows: iterable of (step, name, value, drift).
    """
    series = {}
    for step, name, _value, drift in rows:
        series.setdefault(name, []).append((step, drift))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, pts in sorted(series.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [abs(p[1]) for p in pts], label=name, lw=1)
    ax.set_xlabel("step")
    ax.set_ylabel("|drift| from step 0")
    ax.set_yscale("symlog", linthresh=1e-16)
    if len(series) <= 14:
        ax.legend(fontsize=7, ncols=2)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def render_polygon_steps(charts, path):
    """Overlay of the vertex charts along the construction.

    charts: list (one per step) of lists of (x, y) vertex pairs.
    """
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    cmap = plt.get_cmap("viridis")
    for step, pts in enumerate(charts):
        xs = [p[0] for p in pts] + [pts[0][0]]
        ys = [p[1] for p in pts] + [pts[0][1]]
        color = cmap(step / max(len(charts) - 1, 1))
        ax.plot(xs, ys, "-o", color=color, ms=2.5, lw=1, label=f"step {step}")
    ax.set_aspect("equal")
    if len(charts) <= 10:
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path
