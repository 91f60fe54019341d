"""Rendering of tradeoff curves to image files.

Kept separate from the solvers so matplotlib is only imported when a
figure is actually requested.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

from .tradeoff import TradeoffPoint


def save_tradeoff_figure(
    curves: Mapping[str, Sequence[TradeoffPoint]],
    path: str | Path,
    title: str = "Storage / repair-bandwidth tradeoff",
) -> Path:
    """Plot one or more tradeoff curves (alpha vs beta_C) to an image file.

    Infeasible sweep points are skipped.  The file format follows the
    path suffix (.png, .pdf, .svg, ...).
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for label, points in curves.items():
        xs = [float(p.beta_C) for p in points if p.feasible]
        ys = [float(p.alpha) for p in points if p.feasible]
        ax.plot(xs, ys, marker="o", markersize=3, linewidth=1.2, label=label)
    ax.set_xlabel(r"cross-cluster download per helper $\beta_C$ (symbols)")
    ax.set_ylabel(r"storage per node $\alpha$ (symbols)")
    ax.set_title(title)
    ax.grid(True, linestyle=":", linewidth=0.6)
    if len(curves) > 1 or any(curves):
        ax.legend()
    out = Path(path)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
