"""Figure rendering for the sweep report path.

Renders the oracle's spectral curves E(g) with the quasi-exact crossing
points overlaid, to whatever file format the output path's suffix selects.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_sweep_figure(level_rows, marker_rows, path, title=""):
    """level_rows: (g, level index, E); marker_rows: (g, n, E)."""
    curves = {}
    for g, level, energy in level_rows:
        curves.setdefault(level, ([], []))
        curves[level][0].append(g)
        curves[level][1].append(energy)

    fig, ax = plt.subplots(figsize=(7.2, 4.6))
    for level in sorted(curves):
        gs, es = curves[level]
        ax.plot(gs, es, color="0.45", lw=0.9, zorder=1)
    if marker_rows:
        ax.scatter(
            [g for g, _, _ in marker_rows],
            [e for _, _, e in marker_rows],
            s=34,
            facecolors="none",
            edgecolors="crimson",
            linewidths=1.4,
            zorder=3,
            label="exceptional points",
        )
        ax.legend(loc="best", frameon=False)
    ax.set_xlabel("coupling g")
    ax.set_ylabel("energy")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
