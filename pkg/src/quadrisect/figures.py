"""Matplotlib renderings of the atlas and of per-triangle quadrisections.

These are the raster/vector companions of the hand-rolled SVG output: the
CLI report path writes them next to the CSV dataset.  matplotlib is imported
lazily so library users who never render figures do not pay for it.
"""

from __future__ import annotations

from .atlas import H_WINDOW, HT_WINDOW, AtlasGrid, _COUNT_FILL
from .geometry import TriangleSpec
from .solver import Quadrisection


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_space_figure(grid: AtlasGrid, path: str, dpi: int = 150) -> None:
    """Scatter the classified lattice with the lune boundary and save."""
    plt = _pyplot()
    import numpy as np

    fig, ax = plt.subplots(figsize=(7.5, 5.4))
    for count in (1, 2, 3):
        hs = [c.h for c in grid.cells if c.count == count]
        hts = [c.ht for c in grid.cells if c.count == count]
        if hs:
            ax.scatter(hs, hts, s=3.0, c=_COUNT_FILL[count], marker="s",
                       linewidths=0, label=f"{count} quadrisection" + ("s" if count > 1 else ""))
    hs = np.linspace(0.5, 1.0, 200)
    ax.plot(hs, np.sqrt(np.clip(1 - hs**2, 0, None)), "k-", lw=1)
    hs = np.linspace(0.5, 2.0, 400)
    ax.plot(hs, np.sqrt(np.clip(hs * (2 - hs), 0, None)), "k-", lw=1)
    ax.plot([1, 1], [0, 1], color="#1f4e79", lw=1, ls="--", label="right triangles")
    ax.set_xlim(*H_WINDOW)
    ax.set_ylim(*HT_WINDOW)
    ax.set_xlabel("h")
    ax.set_ylabel("ht")
    ax.set_title("Quadrisection count over the space of triangles")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)


def render_quadrisection_figure(t: TriangleSpec, qs: list[Quadrisection],
                                path: str, dpi: int = 150) -> None:
    """Draw the triangle and every quadrisection's perpendicular cuts."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 5.4))
    verts = [tuple(v) for v in t.vertices] + [tuple(t.vertices[0])]
    ax.plot([v[0] for v in verts], [v[1] for v in verts], "k-", lw=1.6)
    colors = ["#c00000", "#1f4e79", "#375623", "#7030a0", "#806000"]
    for i, q in enumerate(qs):
        color = colors[i % len(colors)]
        for (a, b) in q.segments_original:
            ax.plot([a[0], b[0]], [a[1], b[1]], color=color, lw=1.3)
        ax.plot([], [], color=color,
                label=f"#{i + 1} ({q.base_placement}), area {q.region_areas[0]:.5g}")
    ax.set_aspect("equal")
    ax.legend(fontsize=8, loc="upper right")
    ax.set_title("Quadrisections")
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
