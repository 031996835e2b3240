"""SVG 1.1 rendering of plot layouts: rounded-rect marks without stroke,
bracket interval ticks, and a legend. Output is deterministic."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .axes import Axis
from .layout import PlotLayout

# 10-class categorical palette chosen for color-vision-deficiency safety
PALETTE = (
    "#3f90da",
    "#ffa90e",
    "#bd1f01",
    "#94a4a2",
    "#832db6",
    "#a96b59",
    "#e76300",
    "#b9ac70",
    "#717581",
    "#92dadd",
)

TICK_OFFSET = 8      # px gap between the region edge and the bracket line
LEGEND_WIDTH = 132
LEGEND_SWATCH = 12


@dataclass(frozen=True)
class Theme:
    palette: tuple[str, ...] = PALETTE
    font_family: str = "sans-serif"
    font_size: int = 11
    background: str = "#ffffff"
    neutral: str = "#4878a8"  # mark color when no color dimension is mapped


def load_theme(path: str | Path) -> Theme:
    """Read a theme from a JSON or TOML file (keys: palette, font_family,
    font_size, background)."""
    p = Path(path)
    raw = p.read_bytes()
    if p.suffix.lower() == ".toml":
        try:
            import tomllib  # py311+
        except ModuleNotFoundError:
            import tomli as tomllib
        data = tomllib.loads(raw.decode("utf-8"))
    else:
        data = json.loads(raw)
    kwargs = {}
    if "palette" in data:
        kwargs["palette"] = tuple(data["palette"])
    for key in ("font_family", "font_size", "background", "neutral"):
        if key in data:
            kwargs[key] = data[key]
    return Theme(**kwargs)


def _n(v: float) -> str:
    if float(v).is_integer():
        return str(int(v))
    return f"{v:g}"


def render_svg(layout: PlotLayout, theme: Theme = Theme()) -> bytes:
    """One rounded <rect> per mark (stroke-free, tagged with its point id),
    bracket paths per tick, legend swatches."""
    region = layout.region
    color_index = dict(layout.legend)

    def fill_for(key: str) -> str:
        if key == "" or key not in color_index:
            return theme.neutral
        return theme.palette[color_index[key] % len(theme.palette)]

    has_x_ticks = any(t.axis is Axis.X for t in layout.ticks)
    has_y_ticks = any(t.axis is Axis.Y for t in layout.ticks)
    label_band = theme.font_size + 6
    min_x = region.x - (TICK_OFFSET + 6 + label_band if has_y_ticks else 0) - 4
    min_y = region.y - 4
    max_x = region.x1 + (LEGEND_WIDTH if layout.legend else 4)
    max_y = region.y1 + (TICK_OFFSET + 6 + label_band if has_x_ticks else 0) + 4
    width, height = max_x - min_x, max_y - min_y

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_n(width)}" height="{_n(height)}" '
        f'viewBox="{_n(min_x)} {_n(min_y)} {_n(width)} {_n(height)}" '
        f'font-family={quoteattr(theme.font_family)} font-size="{theme.font_size}">',
        f'<rect x="{_n(min_x)}" y="{_n(min_y)}" width="{_n(width)}" height="{_n(height)}" '
        f'fill="{theme.background}"/>',
    ]

    out.append('<g data-layer="marks">')
    for g in layout.groups:
        for m in g.marks:
            out.append(
                f'<rect data-point-id="{m.point_id}" x="{_n(m.x)}" y="{_n(m.y)}" '
                f'width="{_n(m.w)}" height="{_n(m.h)}" rx="{_n(m.corner_radius)}" '
                f'fill="{fill_for(m.color_key)}"/>'
            )
    out.append("</g>")

    out.append('<g data-layer="ticks" fill="none" stroke="#444444" stroke-width="1">')
    labels = []
    for t in layout.ticks:
        lo, hi = t.pixel_interval
        if t.axis is Axis.X:
            yb = region.y1 + TICK_OFFSET
            out.append(
                f'<path d="M {_n(lo)} {_n(yb - t.arm_length)} L {_n(lo)} {_n(yb)} '
                f'L {_n(hi)} {_n(yb)} L {_n(hi)} {_n(yb - t.arm_length)}"/>'
            )
            labels.append(
                f'<text x="{_n((lo + hi) / 2)}" y="{_n(yb + theme.font_size + 2)}" '
                f'text-anchor="middle">{escape(t.label)}</text>'
            )
        else:
            xb = region.x - TICK_OFFSET
            out.append(
                f'<path d="M {_n(xb + t.arm_length)} {_n(lo)} L {_n(xb)} {_n(lo)} '
                f'L {_n(xb)} {_n(hi)} L {_n(xb + t.arm_length)} {_n(hi)}"/>'
            )
            mid = (lo + hi) / 2
            lx = xb - 6
            labels.append(
                f'<text x="{_n(lx)}" y="{_n(mid)}" text-anchor="middle" '
                f'transform="rotate(-90 {_n(lx)} {_n(mid)})">{escape(t.label)}</text>'
            )
    out.append("</g>")
    out.append(f'<g data-layer="labels" fill="#222222">{"".join(labels)}</g>')

    if layout.legend:
        lx = region.x1 + 16
        out.append('<g data-layer="legend">')
        for key, idx in layout.legend:
            ly = region.y + 4 + idx * (LEGEND_SWATCH + 6)
            out.append(
                f'<rect x="{_n(lx)}" y="{_n(ly)}" width="{LEGEND_SWATCH}" '
                f'height="{LEGEND_SWATCH}" rx="3" fill="{fill_for(key)}"/>'
            )
            out.append(
                f'<text x="{_n(lx + LEGEND_SWATCH + 5)}" y="{_n(ly + LEGEND_SWATCH - 2)}" '
                f'fill="#222222">{escape(key)}</text>'
            )
        out.append("</g>")

    out.append("</svg>")
    return "\n".join(out).encode("utf-8")
