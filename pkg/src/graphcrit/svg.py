"""Minimal deterministic SVG line charts (no plotting dependency).

CSV files are the canonical outputs; these charts are a convenience for
eyeballing the dynamics. Rendering is plain polylines with min/max axis
labels, emitted with fixed float formatting so reruns are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


@dataclass(frozen=True)
class Series:
    name: str
    xs: Sequence[float]
    ys: Sequence[float]


@dataclass(frozen=True)
class Panel:
    title: str
    series: tuple[Series, ...]


def _f(x: float) -> str:
    return f"{x:.2f}"


def _panel_svg(panel: Panel, y_off: int, width: int, height: int) -> list[str]:
    ml, mr, mt, mb = 58, 16, 24, 22
    plot_w = width - ml - mr
    plot_h = height - mt - mb
    xs_all = [x for s in panel.series for x in s.xs]
    ys_all = [y for s in panel.series for y in s.ys if y == y]  # drop NaN
    if not xs_all or not ys_all:
        return [f'<text x="{ml}" y="{y_off + mt}" font-size="11">{panel.title}: no data</text>']
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def px(x: float) -> float:
        return ml + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return y_off + mt + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h

    out = [
        f'<text x="{ml}" y="{y_off + 14}" font-size="12" font-weight="bold">{panel.title}</text>',
        f'<rect x="{ml}" y="{y_off + mt}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#999" stroke-width="1"/>',
        f'<text x="{ml - 4}" y="{y_off + mt + 10}" font-size="10" text-anchor="end">{_f(y_hi)}</text>',
        f'<text x="{ml - 4}" y="{y_off + mt + plot_h}" font-size="10" text-anchor="end">{_f(y_lo)}</text>',
        f'<text x="{ml}" y="{y_off + mt + plot_h + 14}" font-size="10">{_f(x_lo)}</text>',
        f'<text x="{ml + plot_w}" y="{y_off + mt + plot_h + 14}" font-size="10" '
        f'text-anchor="end">{_f(x_hi)}</text>',
    ]
    if y_lo < 0 < y_hi:
        zero = py(0.0)
        out.append(f'<line x1="{ml}" y1="{_f(zero)}" x2="{ml + plot_w}" y2="{_f(zero)}" '
                   'stroke="#ccc" stroke-width="1" stroke-dasharray="3,3"/>')
    for k, series in enumerate(panel.series):
        color = PALETTE[k % len(PALETTE)]
        pts = " ".join(f"{_f(px(x))},{_f(py(y))}"
                       for x, y in zip(series.xs, series.ys) if y == y)
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.3"/>')
        out.append(f'<text x="{ml + plot_w - 4 - 90 * k}" y="{y_off + 14}" font-size="10" '
                   f'text-anchor="end" fill="{color}">{series.name}</text>')
    return out


def render_chart(panels: Sequence[Panel], width: int = 760,
                 panel_height: int = 170) -> str:
    """Stacked line panels as a standalone SVG document."""
    total_h = panel_height * len(panels)
    body: list[str] = []
    for i, panel in enumerate(panels):
        body.extend(_panel_svg(panel, i * panel_height, width, panel_height))
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{total_h}" '
        f'viewBox="0 0 {width} {total_h}">',
        '<rect width="100%" height="100%" fill="white"/>',
        *body,
        "</svg>",
    ]
    return "\n".join(lines) + "\n"


SCATTER_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
    "#98df8a", "#ff9896", "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7",
    "#dbdb8d", "#9edae5",
)
OVERFLOW_COLOR = "#cccccc"  # groups beyond the palette all render gray


def render_scatter(title: str, points: Sequence[tuple[float, float, int]],
                   size: int = 640) -> str:
    """Scatter of (x, y, group) points; group indexes the palette.

    Use group = -1 (or any index past the palette) for the overflow color.
    """
    margin = 40
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x_lo, x_hi = (min(xs), max(xs)) if xs else (0.0, 1.0)
    y_lo, y_hi = (min(ys), max(ys)) if ys else (0.0, 1.0)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    plot = size - 2 * margin

    def px(x: float) -> float:
        return margin + (x - x_lo) / (x_hi - x_lo) * plot

    def py(y: float) -> float:
        return margin + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot

    dots = []
    for x, y, group in points:
        if 0 <= group < len(SCATTER_PALETTE):
            color = SCATTER_PALETTE[group]
        else:
            color = OVERFLOW_COLOR
        dots.append(f'<circle cx="{_f(px(x))}" cy="{_f(py(y))}" r="2.2" '
                    f'fill="{color}" fill-opacity="0.75"/>')
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{margin}" y="20" font-size="13" font-weight="bold">{title}</text>',
        f'<rect x="{margin}" y="{margin}" width="{plot}" height="{plot}" '
        'fill="none" stroke="#999" stroke-width="1"/>',
        *dots,
        "</svg>",
    ]
    return "\n".join(lines) + "\n"
