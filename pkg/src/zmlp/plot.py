"""
牛顿多边形与变异证书的绘图
"""
from typing import List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.patches as patches  # noqa: E402
import matplotlib.pyplot as plt  # noqa: E402

from zmlp.core.lattice import lattice_points  # noqa: E402
from zmlp.core.laurent import LaurentPoly  # noqa: E402
from zmlp.mutation.operator import MutationCertificate  # noqa: E402


def draw_poly(ax, f: LaurentPoly, title: Optional[str] = None) -> None:
    """在 ax 上画 f 的牛顿多边形，格点处标出系数"""
    poly = f.newton_polygon()
    verts = list(poly.vertices)
    if poly.dim == 2:
        ax.add_patch(patches.Polygon(verts, facecolor="#f5f5f5", edgecolor="black", linewidth=1.5, zorder=1))
    elif poly.dim == 1:
        xs, ys = zip(*verts)
        ax.plot(xs, ys, color="black", linewidth=1.5, zorder=1)
    for p in lattice_points(poly):
        c = f.coeff(p)
        ax.plot(*p, "o", color="black" if c else "#bbbbbb", markersize=3, zorder=2)
        if c:
            ax.annotate(str(c), p, textcoords="offset points", xytext=(3, 3), fontsize=8)
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    ax.set_xlim(min(xs) - 0.5, max(xs) + 0.5)
    ax.set_ylim(min(ys) - 0.5, max(ys) + 0.5)
    ax.set_aspect("equal")
    ax.set_xticks(range(min(xs), max(xs) + 1))
    ax.set_yticks(range(min(ys), max(ys) + 1))
    ax.grid(True, linewidth=0.3)
    if title:
        ax.set_title(title, fontsize=9)


def plot_polys(polys: Sequence[LaurentPoly], path: str, titles: Optional[List[str]] = None) -> str:
    """把一串多项式的牛顿多边形画在一行里，保存到 path"""
    n = max(len(polys), 1)
    fig, axes = plt.subplots(1, n, figsize=(3 * n, 3), squeeze=False)
    for i, f in enumerate(polys):
        draw_poly(axes[0][i], f, titles[i] if titles else None)
    fig.tight_layout()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_certificate(cert: MutationCertificate, path: str) -> str:
    """证书中每一步的多边形"""
    titles = ["f"] + [step.label or f"step {i + 1}" for i, step in enumerate(cert.steps)]
    return plot_polys(cert.polys, path, titles)
