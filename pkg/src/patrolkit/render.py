"""Figure output for planar instances via matplotlib's SVG backend."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Polygon

from .errors import NotRenderable
from .metric import MetricSpace
from .solver import CyclicSolution

_COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]


def render_solution(space: MetricSpace, solution: CyclicSolution, path: str) -> str:
    """Draw the sites and one closed tour polygon per part, then save.

    Each tour carries the SVG group id ``tour-<i>`` so downstream tooling can
    pick the polygons out of the file. Instances built from a distance
    matrix, or from points outside the plane, cannot be drawn.
    """
    if space.points is None:
        raise NotRenderable("instance has no coordinates; build it from points")
    if any(len(p) != 2 for p in space.points):
        raise NotRenderable("only 2-dimensional instances can be drawn")

    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    xs = [p[0] for p in space.points]
    ys = [p[1] for p in space.points]
    ax.scatter(xs, ys, s=28, color="black", zorder=3)
    for i, p in enumerate(space.points):
        ax.annotate(space.label_of(i), p, textcoords="offset points", xytext=(5, 5), fontsize=8)

    for i, (tour, robots) in enumerate(zip(solution.tours, solution.robots)):
        color = _COLORS[i % len(_COLORS)]
        label = f"part {i}: {robots} robot{'s' if robots != 1 else ''}, length {tour.length:.4g}"
        pts = [space.points[v] for v in tour.order]
        if len(pts) == 1:
            ax.plot([pts[0][0]], [pts[0][1]], marker="o", markersize=12, fillstyle="none",
                    color=color, gid=f"tour-{i}", label=label)
        else:
            poly = Polygon(pts, closed=True, fill=False, edgecolor=color,
                           linewidth=1.6, gid=f"tour-{i}", label=label)
            ax.add_patch(poly)

    ax.set_aspect("equal", adjustable="datalim")
    ax.autoscale_view()
    ax.set_title(f"latency {solution.latency:.6g}")
    ax.legend(loc="best", fontsize=8)
    fig.savefig(path)
    plt.close(fig)
    return path
