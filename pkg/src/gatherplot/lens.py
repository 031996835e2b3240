"""GatherLens: local gathering applied to a rectangular region of a plain
scatterplot, in standard, histogram, or pie layout. Captured points are laid
out inside the lens and suppressed underneath it; identity is kept down to
per-point wedge cells in the pie."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .data_model import Dataset, FixedCount, Kind, quantize
from .errors import CapacityError, ParameterError, UnknownDimensionError
from .gather import GUTTER_DEFAULT
from .geom import Rect
from .layout import GroupLayout, _equal_natural_widths, layout_absolute

PIE_FULL_TURN = 360.0


class LensMode(str, Enum):
    STANDARD = "standard"
    HISTOGRAM = "histogram"
    PIE = "pie"


@dataclass(frozen=True)
class LensSpec:
    region: Rect
    mode: LensMode = LensMode.STANDARD
    group_dim: str = ""

    def __post_init__(self):
        if self.region.w < 0 or self.region.h < 0:
            raise ParameterError("lens region must not be negative")


@dataclass(slots=True)
class WedgeMark:
    point_id: int
    r0: float
    r1: float
    a0: float
    a1: float
    color_key: str


@dataclass(slots=True)
class Sector:
    value_key: str
    angle_start: float
    angle_end: float
    wedges: list[WedgeMark]


@dataclass(frozen=True)
class LensLayout:
    region: Rect
    mode: LensMode
    group_dim: str
    captured_ids: tuple[int, ...]
    groups: tuple[GroupLayout, ...] = ()
    sectors: tuple[Sector, ...] = ()
    center: tuple[float, float] = (0.0, 0.0)
    radius: float = 0.0

    @property
    def base_suppressed(self) -> tuple[int, ...]:
        # exactly the captured ids: never draw a point twice
        return self.captured_ids

    @property
    def mark_count(self) -> int:
        if self.mode is LensMode.PIE:
            return sum(len(s.wedges) for s in self.sectors)
        return sum(len(g.marks) for g in self.groups)


def capture(
    scatter_layout: Sequence[tuple[int, float, float, float]], spec: LensSpec
) -> list[int]:
    """Ids whose scatter mark rectangle intersects the lens region (closed:
    border marks count, so they are suppressed rather than drawn twice).
    Scatter tuples are (point_id, center_x, center_y, mark_size); a zero-area
    region captures nothing."""
    region = spec.region
    if region.w <= 0 or region.h <= 0:
        return []
    out = []
    for pid, cx, cy, s in scatter_layout:
        half = s / 2
        mark = Rect(cx - half, cy - half, s, s)
        if region.intersects_closed(mark):
            out.append(pid)
    return out


def scatter_positions(
    dataset: Dataset,
    x_dim: str,
    y_dim: str,
    plot: Rect,
    mark_size: float = 6.0,
) -> list[tuple[int, float, float, float]]:
    """Plain linear scatter base for the lens: both axes continuous, y value
    increasing upward on screen. Returns (point_id, cx, cy, size) tuples."""
    for name in (x_dim, y_dim):
        if not dataset.has_dimension(name):
            raise UnknownDimensionError(name)
        if dataset.dimension(name).kind is not Kind.CONTINUOUS:
            raise ParameterError(f"scatter axis {name!r} must be continuous")
    xs, ys = dataset.values(x_dim), dataset.values(y_dim)
    x_lo, x_hi = dataset.dimension(x_dim).range
    y_lo, y_hi = dataset.dimension(y_dim).range
    out = []
    for pid in dataset.point_ids:
        fx = (xs[pid] - x_lo) / (x_hi - x_lo) if x_hi > x_lo else 0.5
        fy = (ys[pid] - y_lo) / (y_hi - y_lo) if y_hi > y_lo else 0.5
        out.append((pid, plot.x + fx * plot.w, plot.y + plot.h - fy * plot.h, mark_size))
    return out


def _group_keys_and_lookup(dataset: Dataset, spec: LensSpec):
    if not spec.group_dim:
        raise ParameterError("lens needs a group dimension")
    if not dataset.has_dimension(spec.group_dim):
        raise UnknownDimensionError(spec.group_dim)
    dim = dataset.dimension(spec.group_dim)
    if dim.kind is Kind.CATEGORICAL:
        col = dataset.values(spec.group_dim)
        return dim.categories, (lambda pid: col[pid])
    q = quantize(dim, FixedCount(7))
    bins = q.classify_many(dataset.values(spec.group_dim))
    keys = tuple(q.labels[int(b)] for b in bins)
    return q.labels, (lambda pid: keys[pid])


def layout_lens(
    captured: Sequence[int], dataset: Dataset, spec: LensSpec
) -> LensLayout:
    """Lay the captured points out inside the lens region. Zero capture gives
    an empty frame, not an error."""
    keys, key_of = _group_keys_and_lookup(dataset, spec)
    members: dict[str, list[int]] = {k: [] for k in keys}
    for pid in captured:
        members[key_of(pid)].append(pid)

    if spec.mode is LensMode.PIE:
        return _pie_lens(spec, keys, members, key_of, captured)

    if not captured:
        return LensLayout(spec.region, spec.mode, spec.group_dim, ())

    region = Rect(
        float(int(spec.region.x)),
        float(int(spec.region.y)),
        float(max(1, int(spec.region.w))),
        float(max(1, int(spec.region.h))),
    )
    if region.w < len(keys):
        raise CapacityError(
            f"lens region {int(region.w)} px cannot hold {len(keys)} groups"
        )
    if spec.mode is LensMode.STANDARD:
        groups = _standard_lens_groups(region, keys, members, key_of)
    else:
        groups = _histogram_lens_groups(region, keys, members, key_of)
    return LensLayout(
        spec.region, spec.mode, spec.group_dim, tuple(captured), groups=tuple(groups)
    )


def _standard_lens_groups(region: Rect, keys, members, key_of):
    """One stacked group per value, absolute-mode packing inside the lens."""
    gutter = GUTTER_DEFAULT if region.w >= len(keys) * (1 + GUTTER_DEFAULT) else 0
    widths = _equal_natural_widths(len(keys), int(region.w), gutter)
    cells, boxes = {}, {}
    x = region.x
    for key, w in zip(keys, widths):
        cells[(key, "")] = members[key]
        boxes[(key, "")] = Rect(x, region.y, float(w), region.h)
        x += w + gutter
    groups, _, _ = layout_absolute(cells, boxes, key_of)
    return groups


def _histogram_lens_groups(region: Rect, keys, members, key_of):
    """Bottom-aligned columns of equal width, heights proportional to counts,
    marks unit-packed inside each column."""
    gutter = GUTTER_DEFAULT if region.w >= len(keys) * (1 + GUTTER_DEFAULT) else 0
    widths = _equal_natural_widths(len(keys), int(region.w), gutter)
    max_count = max((len(v) for v in members.values()), default=0)
    cells, boxes = {}, {}
    x = region.x
    for key, w in zip(keys, widths):
        count = len(members[key])
        h = max(1, int(region.h * count / max_count)) if count else 0
        cells[(key, "")] = members[key]
        boxes[(key, "")] = Rect(x, region.y1 - h, float(w), float(h))
        x += w + gutter
    groups, _, _ = layout_absolute(cells, boxes, key_of)
    return groups


def _pie_lens(spec: LensSpec, keys, members, key_of, captured) -> LensLayout:
    """Sector angles proportional to counts; each sector tiled concentrically
    with one wedge cell per point (uniform ring thickness)."""
    region = spec.region
    total = len(captured)
    center = (region.cx, region.cy)
    radius = min(region.w, region.h) / 2
    if total == 0 or radius <= 0:
        return LensLayout(
            region, spec.mode, spec.group_dim, tuple(captured), center=center, radius=radius
        )

    counts = [len(members[k]) for k in keys]
    # cumulative boundaries keep the angles summing to exactly 360
    boundaries = [PIE_FULL_TURN * (sum(counts[: i + 1]) / total) for i in range(len(keys))]
    starts = [0.0] + boundaries[:-1]

    nrings = max(1, round(math.sqrt(total) / 2))
    thickness = radius / nrings
    ring_weights = [(2 * r + 1) for r in range(nrings)]
    weight_total = sum(ring_weights)

    sectors = []
    for key, count, a0, a1 in zip(keys, counts, starts, boundaries):
        ids = members[key]
        wedges: list[WedgeMark] = []
        if count:
            per_ring = _largest_remainder(count, ring_weights, weight_total)
            taken = 0
            for r, n_r in enumerate(per_ring):
                if n_r == 0:
                    continue
                r0, r1 = r * thickness, (r + 1) * thickness
                step = (a1 - a0) / n_r
                for j in range(n_r):
                    pid = ids[taken]
                    taken += 1
                    wedges.append(
                        WedgeMark(pid, r0, r1, a0 + j * step, a0 + (j + 1) * step, key)
                    )
        sectors.append(Sector(key, a0, a1, wedges))
    return LensLayout(
        region,
        spec.mode,
        spec.group_dim,
        tuple(captured),
        sectors=tuple(sectors),
        center=center,
        radius=radius,
    )


def _largest_remainder(total: int, weights: Sequence[float], weight_sum: float) -> list[int]:
    quotas = [total * w / weight_sum for w in weights]
    out = [int(q) for q in quotas]
    short = total - sum(out)
    order = sorted(range(len(weights)), key=lambda i: (-(quotas[i] - out[i]), i))
    for i in order[:short]:
        out[i] += 1
    return out
