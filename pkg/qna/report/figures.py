"""
Static SVG figures: similarity scatter, topic heatmap and lexical dispersion
"""
import logging
from typing import Dict, Mapping, Sequence, Union
from xml.sax.saxutils import escape, quoteattr

import numpy as np
import pandas as pd

from ..errors import FigureError

logger = logging.getLogger(__name__)

MARGIN = 60
LABEL_WIDTH = 160
FONT = 'font-family="Verdana, sans-serif" font-size="11"'
LOW_COLOR = (255, 255, 255)
HIGH_COLOR = (8, 48, 107)


class SVG:
    """Accumulates SVG markup; text content and attributes are escaped"""

    def __init__(self, width: float, height: float, title: str = ""):
        self.width = width
        self.height = height
        self.parts = [
            '<?xml version="1.0" standalone="no"?>\n',
            f'<svg version="1.1" width="{width:.0f}" height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}" '
            f'xmlns="http://www.w3.org/2000/svg">\n',
        ]
        if title:
            self.parts.append(f"<title>{escape(title)}</title>\n")

    def group_start(self, cls: str) -> None:
        self.parts.append(f"<g class={quoteattr(cls)}>\n")

    def group_end(self) -> None:
        self.parts.append("</g>\n")

    def rect(self, x: float, y: float, w: float, h: float, fill: str, cls: str = "", extra: str = "") -> None:
        cls_attr = f" class={quoteattr(cls)}" if cls else ""
        self.parts.append(f'<rect{cls_attr} x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{h:.2f}" fill="{fill}" {extra}/>\n')

    def circle(self, cx: float, cy: float, r: float, cls: str = "", fill: str = "#1f77b4") -> None:
        cls_attr = f" class={quoteattr(cls)}" if cls else ""
        self.parts.append(f'<circle{cls_attr} cx="{cx:.2f}" cy="{cy:.2f}" r="{r:.2f}" fill="{fill}"/>\n')

    def line(self, x1: float, y1: float, x2: float, y2: float, cls: str = "", stroke: str = "#333") -> None:
        cls_attr = f" class={quoteattr(cls)}" if cls else ""
        self.parts.append(f'<line{cls_attr} x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="{stroke}"/>\n')

    def text(self, x: float, y: float, content: str, cls: str = "", anchor: str = "start", extra: str = "") -> None:
        cls_attr = f" class={quoteattr(cls)}" if cls else ""
        self.parts.append(
            f'<text{cls_attr} x="{x:.2f}" y="{y:.2f}" text-anchor="{anchor}" {FONT} {extra}>{escape(str(content))}</text>\n'
        )

    def get_svg(self) -> str:
        return "".join(self.parts) + "</svg>\n"


def _color(t: float) -> str:
    r, g, b = (round(lo + (hi - lo) * t) for lo, hi in zip(LOW_COLOR, HIGH_COLOR))
    return f"rgb({r},{g},{b})"


# ============== Scatter ==============

def scatter_svg(points: pd.DataFrame, title: str = "", width: float = 640, height: float = 640) -> str:
    """One labeled marker per row, first two columns as x and y, index as labels"""
    if points is None or len(points) == 0:
        raise FigureError("scatter needs at least one point")
    if points.shape[1] < 2:
        raise FigureError(f"scatter needs two coordinate columns, got {points.shape[1]}")
    xy = points.iloc[:, :2].to_numpy(dtype=float)
    if not np.all(np.isfinite(xy)):
        raise FigureError("scatter coordinates must be finite")

    lo, hi = xy.min(axis=0), xy.max(axis=0)
    span = np.where(hi - lo > 0, hi - lo, 1.0)
    inner_w, inner_h = width - 2 * MARGIN, height - 2 * MARGIN

    svg = SVG(width, height, title)
    svg.group_start("points")
    for label, (x, y) in zip(points.index, xy):
        px = MARGIN + (x - lo[0]) / span[0] * inner_w
        py = height - MARGIN - (y - lo[1]) / span[1] * inner_h
        svg.circle(px, py, 4, cls="point")
        svg.text(px + 6, py - 6, label, cls="label")
    svg.group_end()
    if title:
        svg.text(width / 2, MARGIN / 2, title, anchor="middle")
    return svg.get_svg()


# ============== Heatmap ==============

def heatmap_svg(matrix: pd.DataFrame, title: str = "", cell: float = 18) -> str:
    """
    One cell per matrix entry, color linear in [0, max]; a legend shows the scale.
    """
    if matrix is None or matrix.size == 0:
        raise FigureError("heatmap needs a non-empty matrix")
    values = matrix.to_numpy(dtype=float)
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise FigureError("heatmap values must be finite and non-negative")

    n_rows, n_cols = values.shape
    top = MARGIN + 40
    legend_y = top + n_rows * cell + 30
    width = LABEL_WIDTH + n_cols * cell + MARGIN
    height = legend_y + 50
    vmax = values.max()

    svg = SVG(width, height, title)
    svg.group_start("cells")
    for i in range(n_rows):
        for j in range(n_cols):
            t = values[i, j] / vmax if vmax > 0 else 0.0
            svg.rect(LABEL_WIDTH + j * cell, top + i * cell, cell, cell, _color(t), cls="cell")
    svg.group_end()

    svg.group_start("row-labels")
    for i, name in enumerate(matrix.index):
        svg.text(LABEL_WIDTH - 6, top + i * cell + cell * 0.7, name, anchor="end")
    svg.group_end()
    svg.group_start("column-labels")
    for j, name in enumerate(matrix.columns):
        x, y = LABEL_WIDTH + j * cell + cell * 0.7, top - 6
        svg.text(x, y, name, extra=f'transform="rotate(-60 {x:.2f} {y:.2f})"')
    svg.group_end()

    svg.group_start("legend")
    steps = 10
    for s in range(steps):
        svg.rect(LABEL_WIDTH + s * cell, legend_y, cell, cell / 2, _color(s / (steps - 1)))
    svg.text(LABEL_WIDTH, legend_y + cell + 6, "0")
    svg.text(LABEL_WIDTH + steps * cell, legend_y + cell + 6, f"{vmax:.4f}", anchor="end")
    svg.group_end()
    if title:
        svg.text(width / 2, MARGIN / 2, title, anchor="middle")
    return svg.get_svg()


# ============== Dispersion ==============

def dispersion_svg(positions: Mapping[str, Sequence[float]], title: str = "", width: float = 720, row: float = 24) -> str:
    """One row per target word with a tick at each relative position"""
    if not positions:
        raise FigureError("dispersion needs at least one target")
    for word, values in positions.items():
        if any(not 0 <= p <= 1 for p in values):
            raise FigureError(f"dispersion positions of '{word}' must lie in [0, 1]")

    top = MARGIN
    inner = width - LABEL_WIDTH - MARGIN
    height = top + len(positions) * row + MARGIN

    svg = SVG(width, height, title)
    for i, (word, values) in enumerate(positions.items()):
        y = top + i * row
        svg.text(LABEL_WIDTH - 6, y + row * 0.6, word, anchor="end")
        svg.group_start("row")
        for p in values:
            x = LABEL_WIDTH + p * inner
            svg.line(x, y + 3, x, y + row - 3, cls="tick")
        svg.group_end()
    svg.line(LABEL_WIDTH, height - MARGIN + 4, LABEL_WIDTH + inner, height - MARGIN + 4, cls="axis")
    if title:
        svg.text(width / 2, MARGIN / 2, title, anchor="middle")
    return svg.get_svg()


RENDERERS = {
    "scatter": scatter_svg,
    "heatmap": heatmap_svg,
    "dispersion": dispersion_svg,
}


def render_figure(kind: str, data: Union[pd.DataFrame, Dict[str, Sequence[float]]], **options) -> str:
    """SVG document for kind in {scatter, heatmap, dispersion}"""
    if kind not in RENDERERS:
        raise FigureError(f"unknown figure kind '{kind}', expected one of {', '.join(RENDERERS)}")
    return RENDERERS[kind](data, **options)
