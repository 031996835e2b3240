"""Geometry JSON documents: the single wire format shared by the CLI, the
HTTP service, and the web frontend. Field names, pixel units, and the y-down
convention are pinned by geometry.schema.json shipped next to this module."""

from __future__ import annotations

import json

from .layout import GroupLayout, PlotLayout

SCHEMA_VERSION = 1


def _group_to_json(g: GroupLayout) -> dict:
    return {
        "cell": {"x": g.cell_key[0], "y": g.cell_key[1]},
        "box": g.box.to_json(),
        "grid": {"cols": g.grid[0], "rows": g.grid[1]},
        "folded": g.folded,
        "marks": [
            {
                "id": m.point_id,
                "x": m.x,
                "y": m.y,
                "w": m.w,
                "h": m.h,
                "r": m.corner_radius,
                "color": m.color_key,
            }
            for m in g.marks
        ],
    }


def layout_document(layout: PlotLayout) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "units": "px",
        "y_down": True,
        "region": layout.region.to_json(),
        "mode_used": layout.mode_used.value,
        "mark_count": layout.mark_count,
        "groups": [_group_to_json(g) for g in layout.groups],
        "ticks": [t.to_json() for t in layout.ticks],
        "legend": [{"key": k, "index": i} for k, i in layout.legend],
        "warnings": list(layout.warnings),
    }


def lens_document(lens_layout, suppressed=None) -> dict:
    """Lens geometry under a "lens" key, plus the ids hidden underneath."""
    from .lens import LensLayout, LensMode

    assert isinstance(lens_layout, LensLayout)
    lens: dict = {
        "mode": lens_layout.mode.value,
        "region": lens_layout.region.to_json(),
        "group_dim": lens_layout.group_dim,
        "captured": list(lens_layout.captured_ids),
        "mark_count": lens_layout.mark_count,
    }
    if lens_layout.mode is LensMode.PIE:
        lens["sectors"] = [
            {
                "key": s.value_key,
                "angle_start": s.angle_start,
                "angle_end": s.angle_end,
                "wedges": [
                    {
                        "id": w.point_id,
                        "r0": w.r0,
                        "r1": w.r1,
                        "a0": w.a0,
                        "a1": w.a1,
                        "color": w.color_key,
                    }
                    for w in s.wedges
                ],
            }
            for s in lens_layout.sectors
        ]
        lens["center"] = {"x": lens_layout.center[0], "y": lens_layout.center[1]}
        lens["radius"] = lens_layout.radius
    else:
        lens["groups"] = [_group_to_json(g) for g in lens_layout.groups]
    return {
        "schema_version": SCHEMA_VERSION,
        "units": "px",
        "y_down": True,
        "lens": lens,
        "suppressed": list(lens_layout.base_suppressed if suppressed is None else suppressed),
    }


def to_bytes(document: dict) -> bytes:
    """Canonical bytes: sorted keys, no whitespace; identical documents are
    byte-identical."""
    return json.dumps(document, sort_keys=True, separators=(",", ":")).encode("utf-8")
