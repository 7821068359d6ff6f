"""Static SVG renderings of base curves, critical values and plumbing chains."""

from __future__ import annotations

import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .curves import PlanarCurve  # noqa: E402
from .fibration import FibreParams, critical_values  # noqa: E402
from .quotient import PlumbingGraph  # noqa: E402

SVG_NS = "http://www.w3.org/2000/svg"
HASH_SALT = "milnorkit"
DPI = 72


@dataclass
class SvgScene:
    """Layers to draw; width and height are in pixels."""

    n: int
    curves: list[PlanarCurve] = field(default_factory=list)
    plumbing: PlumbingGraph | None = None
    width: int = 480
    height: int = 480


def _draw_base(ax, scene: SvgScene) -> None:
    crit = np.array(critical_values(FibreParams(scene.n)))
    for i, curve in enumerate(scene.curves):
        z = np.append(curve.points, curve.points[0])
        (line,) = ax.plot(z.real, z.imag, color="C0", lw=1.2)
        line.set_gid(f"curve-{i}")
    for k, c in enumerate(crit):
        (dot,) = ax.plot([c.real], [c.imag], marker="x", color="k", ms=7, mew=1.5, ls="none")
        dot.set_gid(f"puncture-{k}")
    pts = [crit] + [c.points for c in scene.curves]
    extent = max(1.2, 1.1 * max(float(np.max(np.abs(p))) for p in pts))
    ax.set_xlim(-extent, extent)
    ax.set_ylim(-extent, extent)
    ax.set_aspect("equal")
    ax.axhline(0, color="0.85", lw=0.5, zorder=0)
    ax.axvline(0, color="0.85", lw=0.5, zorder=0)
    ax.set_title(f"base of the A_{scene.n} fibration")


def _draw_plumbing(ax, g: PlumbingGraph) -> None:
    k = len(g.euler_numbers)
    xs = np.arange(k, dtype=float)
    ax.plot(xs, np.zeros(k), color="0.3", lw=1.0, zorder=1)
    for i, e in enumerate(g.euler_numbers):
        (node,) = ax.plot([xs[i]], [0.0], marker="o", ms=10, color="C1", zorder=2, ls="none")
        node.set_gid(f"plumbing-{i}")
        ax.annotate(str(e), (xs[i], 0.0), xytext=(0, 10), textcoords="offset points", ha="center")
    ax.set_xlim(-0.6, k - 0.4)
    ax.set_ylim(-1, 1)
    ax.set_axis_off()
    ax.set_title("plumbing chain")


def render_svg(scene: SvgScene) -> str:
    """Deterministic SVG text for the scene."""
    with plt.rc_context({"svg.hashsalt": HASH_SALT, "svg.fonttype": "none"}):
        if scene.plumbing is None:
            fig, ax = plt.subplots(figsize=(scene.width / DPI, scene.height / DPI), dpi=DPI)
            _draw_base(ax, scene)
        else:
            fig, (ax, ax2) = plt.subplots(
                2, 1, figsize=(scene.width / DPI, scene.height / DPI), dpi=DPI, height_ratios=[4, 1]
            )
            _draw_base(ax, scene)
            _draw_plumbing(ax2, scene.plumbing)
        fig.tight_layout()
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
        plt.close(fig)
    return buf.getvalue()


def svg_ids(svg: str, prefix: str) -> list[str]:
    """ids of elements starting with ``prefix``; raises ParseError on malformed XML."""
    root = ET.fromstring(svg)
    return [el.get("id") for el in root.iter() if (el.get("id") or "").startswith(prefix)]


def is_valid_svg(svg: str) -> bool:
    try:
        root = ET.fromstring(svg)
    except ET.ParseError:
        return False
    return root.tag == f"{{{SVG_NS}}}svg" and root.get("version") == "1.1"
