"""Complete gatherplot geometry: mode resolution, per-cell grid packing,
undefined axes, the same-variable diagonal case, and axis folding."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Mapping, Sequence

from .axes import Axis, BracketTick, bracket_ticks
from .data_model import Dataset, Kind, Quantizer
from .errors import CapacityError, ParameterError, UnknownDimensionError
from .gather import (
    GUTTER_DEFAULT,
    GatherTransform,
    Segment,
    SizingPolicy,
    bin_continuous,
    group_ids_by_value,
    order_within_segment,
)
from .geom import SUBPIXEL, Rect, snap_down

MARK_SIZE_CAP = 32      # px; uncapped marks look absurd for tiny datasets
MARK_SIZE_FLOOR = 1     # px; below this we warn and clamp
FOLD_WIDTH = 12         # px strip for minimized segments
ASPECT_THRESHOLD = 3.0  # auto mode switches to streamgraph strictly above this
MIN_TILE = 1.0 / SUBPIXEL


class Mode(str, Enum):
    AUTO = "auto"
    ABSOLUTE = "absolute"
    NORMALIZED = "normalized"
    STREAMGRAPH = "streamgraph"


class FoldState(str, Enum):
    MINIMIZED = "min"
    MAXIMIZED = "max"


@dataclass(frozen=True)
class GatherplotSpec:
    """A plot request: axis/color dimension names (None = undefined axis),
    layout mode, target pixel region, and per-value fold states."""

    region: Rect
    x_dim: str | None = None
    y_dim: str | None = None
    color_dim: str | None = None
    mode: Mode = Mode.AUTO
    folds: tuple[tuple[Axis, str, FoldState], ...] = ()
    streamgraph_k: int | None = None

    def __post_init__(self):
        if self.region.w <= 0 or self.region.h <= 0:
            raise ParameterError("plot region must have positive size")
        norm = tuple(
            sorted((Axis(ax), key, FoldState(st)) for ax, key, st in self.folds)
        )
        object.__setattr__(self, "folds", norm)
        for axis in (Axis.X, Axis.Y):
            maxed = [k for ax, k, st in norm if ax is axis and st is FoldState.MAXIMIZED]
            if len(maxed) > 1:
                raise ParameterError(f"axis {axis.value} has more than one maximized value")
        if self.streamgraph_k is not None and self.streamgraph_k < 1:
            raise ParameterError("streamgraph_k must be >= 1")

    def fold_state(self, axis: Axis, key: str) -> FoldState | None:
        for ax, k, st in self.folds:
            if ax is axis and k == key:
                return st
        return None

    def with_fold(self, axis: Axis, key: str, state: FoldState | None) -> "GatherplotSpec":
        kept = tuple(f for f in self.folds if not (f[0] is Axis(axis) and f[1] == key))
        if state is not None:
            kept = kept + ((Axis(axis), key, FoldState(state)),)
        return replace(self, folds=kept)


@dataclass(slots=True)
class MarkGeometry:
    point_id: int
    x: float
    y: float
    w: float
    h: float
    corner_radius: float
    color_key: str


@dataclass(slots=True)
class GroupLayout:
    cell_key: tuple[str, str]
    box: Rect
    marks: list[MarkGeometry]
    grid: tuple[int, int]
    folded: bool = False


@dataclass(frozen=True)
class PlotLayout:
    region: Rect
    groups: tuple[GroupLayout, ...]
    ticks: tuple[BracketTick, ...]
    mode_used: Mode
    legend: tuple[tuple[str, int], ...]
    warnings: tuple[str, ...] = ()

    @property
    def mark_count(self) -> int:
        return sum(len(g.marks) for g in self.groups)

    def all_marks(self):
        for g in self.groups:
            yield from g.marks


def resolve_mode(spec: GatherplotSpec, cell_aspect: float) -> Mode:
    """Explicit modes pass through; auto picks streamgraph only for cells
    elongated strictly beyond the threshold ratio. Normalized is never
    auto-selected."""
    if cell_aspect <= 0:
        raise ParameterError("cell aspect must be positive")
    if spec.mode is not Mode.AUTO:
        return spec.mode
    elongation = max(cell_aspect, 1.0 / cell_aspect)
    return Mode.STREAMGRAPH if elongation > ASPECT_THRESHOLD else Mode.ABSOLUTE


def _round_radius(w: float, h: float) -> float:
    """Constant 3 px rounded edge, going fully circular for small marks."""
    return min(3.0, min(w, h) / 2)


def _grid_capacity(box: Rect, m: int) -> int:
    return int(box.w // m) * int(box.h // m)


def _fit_mark_size(cells: Mapping[tuple, int], boxes: Mapping[tuple, Rect]) -> tuple[int, bool]:
    """Largest ladder mark size that grid-packs every nonempty cell; clamps to
    the floor with a warning when even 1 px cannot hold the densest cell."""
    nonempty = [(count, boxes[key]) for key, count in cells.items() if count > 0]
    if not nonempty:
        return MARK_SIZE_CAP, False
    top = min(MARK_SIZE_CAP, *(max(1, int(min(b.w, b.h))) for _, b in nonempty))
    for m in range(top, MARK_SIZE_FLOOR - 1, -1):
        if all(_grid_capacity(box, m) >= count for count, box in nonempty):
            return m, False
    return MARK_SIZE_FLOOR, True


def _pack_column_major(
    members: Sequence[int],
    box: Rect,
    m: int,
    rows: int,
    cols: int,
    color_of: Callable[[int], str],
    radius: float,
) -> list[MarkGeometry]:
    """Fill bottom-to-top then left-to-right so stacks grow upward; the used
    block is centered in the box. Overflow beyond the grid piles into the
    last column (only reachable after a legibility clamp)."""
    count = len(members)
    if count == 0:
        return []
    used_cols = min(cols, math.ceil(count / rows))
    used_rows = min(rows, count)
    left = box.x + int((box.w - used_cols * m) // 2)
    bottom = box.y + box.h - int((box.h - used_rows * m) // 2)
    marks = []
    for idx, pid in enumerate(members):
        col, row = divmod(idx, rows)
        if col >= cols:
            col, row = cols - 1, rows - 1
        marks.append(
            MarkGeometry(
                point_id=pid,
                x=left + col * m,
                y=bottom - (row + 1) * m,
                w=m,
                h=m,
                corner_radius=radius,
                color_key=color_of(pid),
            )
        )
    return marks


def _tile_cell(
    members: Sequence[int], box: Rect, color_of: Callable[[int], str]
) -> tuple[list[MarkGeometry], tuple[int, int]]:
    """Fractional tiling of one cell: the grid shape follows the box aspect
    ratio and the marks stretch to fill it."""
    count = len(members)
    cols = min(count, max(1, math.ceil(math.sqrt(count * box.w / box.h))))
    rows = max(1, math.ceil(count / cols))
    w = max(MIN_TILE, snap_down(box.w / cols))
    h = max(MIN_TILE, snap_down(box.h / rows))
    radius = _round_radius(w, h)
    marks = []
    for idx, pid in enumerate(members):
        col, row = divmod(idx, rows)
        marks.append(
            MarkGeometry(
                point_id=pid,
                x=box.x + col * w,
                y=box.y + box.h - (row + 1) * h,
                w=w,
                h=h,
                corner_radius=radius,
                color_key=color_of(pid),
            )
        )
    return marks, (cols, rows)


def _pack_or_tile(
    members: Sequence[int],
    box: Rect,
    m: int,
    color_of: Callable[[int], str],
) -> tuple[list[MarkGeometry], tuple[int, int]]:
    """Integer grid pack at mark size m; cells denser than even 1 px marks can
    hold fall back to overlap-free fractional tiling."""
    count = len(members)
    if count == 0:
        return [], (0, 0)
    rows = int(box.h // m)
    cols = int(box.w // m)
    if rows < 1 or cols < 1 or count > rows * cols:
        return _tile_cell(members, box, color_of)
    marks = _pack_column_major(members, box, m, rows, cols, color_of, radius=m / 2)
    return marks, (min(cols, math.ceil(count / rows)), rows)


def layout_absolute(
    cells: Mapping[tuple, Sequence[int]],
    boxes: Mapping[tuple, Rect],
    color_of: Callable[[int], str] = lambda _: "",
) -> tuple[list[GroupLayout], int, bool]:
    """One global mark size, set by the densest cell; marks are squares with
    fully rounded corners so they read as dots."""
    counts = {k: len(v) for k, v in cells.items()}
    m, warned = _fit_mark_size(counts, boxes)
    groups = []
    for key, members in cells.items():
        marks, grid = _pack_or_tile(members, boxes[key], m, color_of)
        groups.append(GroupLayout(key, boxes[key], marks, grid))
    return groups, m, warned


def layout_normalized(
    cells: Mapping[tuple, Sequence[int]],
    boxes: Mapping[tuple, Rect],
    color_of: Callable[[int], str] = lambda _: "",
) -> list[GroupLayout]:
    """Marks stretch so every nonempty group tiles its whole box; the grid
    shape follows the box aspect ratio."""
    groups = []
    for key, members in cells.items():
        box = boxes[key]
        if not members:
            groups.append(GroupLayout(key, box, [], (0, 0)))
            continue
        marks, grid = _tile_cell(members, box, color_of)
        groups.append(GroupLayout(key, box, marks, grid))
    return groups


def choose_streamgraph_k(
    cells: Mapping[tuple, Sequence[int]], boxes: Mapping[tuple, Rect]
) -> int:
    """Default cross count: walk the dot ladder downward and take the first
    mark size whose ribbons fit every box along the long edge."""
    nonempty = [(len(v), boxes[k]) for k, v in cells.items() if v]
    if not nonempty:
        return 1
    shortest = max(1, int(min(min(b.w, b.h) for _, b in nonempty)))
    for m in range(min(MARK_SIZE_CAP, shortest), MARK_SIZE_FLOOR - 1, -1):
        ok = True
        for count, box in nonempty:
            shorter, longer = min(box.w, box.h), max(box.w, box.h)
            k = max(1, int(shorter // m))
            if math.ceil(count / k) * m > longer:
                ok = False
                break
        if ok:
            return max(1, int(shortest // m))
    return max(1, int(shortest))


def layout_streamgraph(
    cells: Mapping[tuple, Sequence[int]],
    boxes: Mapping[tuple, Rect],
    cross_count: int,
    color_of: Callable[[int], str] = lambda _: "",
) -> list[GroupLayout]:
    """Every group keeps exactly `cross_count` marks along its shorter edge
    (last line may be partial), ribbons growing along the longer edge."""
    if cross_count < 1:
        raise ParameterError("cross count must be >= 1")
    k = cross_count
    mark = None
    for members, box in ((cells[key], boxes[key]) for key in cells):
        if not members:
            continue
        shorter, longer = min(box.w, box.h), max(box.w, box.h)
        lines = math.ceil(len(members) / k)
        m_fit = min(shorter / k, longer / lines)
        mark = m_fit if mark is None else min(mark, m_fit)
    m = max(MIN_TILE, snap_down(mark)) if mark is not None else 1.0

    groups = []
    for key, members in cells.items():
        box = boxes[key]
        horizontal = box.w >= box.h
        shorter = box.h if horizontal else box.w
        offset = snap_down((shorter - k * m) / 2)  # center the ribbon crosswise
        radius = m / 2
        marks = []
        for idx, pid in enumerate(members):
            line, cross = divmod(idx, k)
            if horizontal:
                x = box.x + line * m
                y = box.y + offset + cross * m
            else:
                x = box.x + offset + cross * m
                y = box.y + box.h - (line + 1) * m
            marks.append(MarkGeometry(pid, x, y, m, m, radius, color_of(pid)))
        lines = math.ceil(len(members) / k) if members else 0
        grid = (lines, k) if box.w >= box.h else (k, lines)
        groups.append(GroupLayout(key, box, marks, grid))
    return groups


def _layout_strip(
    key: tuple[str, str],
    members: Sequence[int],
    box: Rect,
    along_y: bool,
    color_of: Callable[[int], str],
) -> GroupLayout:
    """Minimized-segment cells: a color-sorted single file spanning the cell's
    cross extent. Marks may go sub-pixel; with huge counts they clamp to the
    1/256 px grid and overlap inside the strip, which folding permits."""
    count = len(members)
    if count == 0:
        return GroupLayout(key, box, [], (0, 0), folded=True)
    marks = []
    if along_y:
        h = max(MIN_TILE, snap_down(box.h / count))
        for j, pid in enumerate(members):
            y = max(box.y, box.y + box.h - (j + 1) * h)
            marks.append(
                MarkGeometry(pid, box.x, y, box.w, h, _round_radius(box.w, h), color_of(pid))
            )
        grid = (1, count)
    else:
        w = max(MIN_TILE, snap_down(box.w / count))
        for j, pid in enumerate(members):
            x = min(box.x + j * w, box.x + box.w - w)
            marks.append(
                MarkGeometry(pid, x, box.y, w, box.h, _round_radius(w, box.h), color_of(pid))
            )
        grid = (count, 1)
    return GroupLayout(key, box, marks, grid, folded=True)


# --- axis assembly -----------------------------------------------------------


@dataclass(frozen=True)
class _AxisPlan:
    """Resolved per-axis segmentation plus the point -> segment key mapping."""

    transform: GatherTransform | None   # None for an undefined axis
    keys: tuple[str, ...]
    key_of: tuple[str, ...]             # per point_id
    minimized: frozenset[str]
    quantizer: Quantizer | None = None
    dot_size: int | None = None
    warnings: tuple[str, ...] = ()


def _fold_states(spec: GatherplotSpec, axis: Axis, keys: Sequence[str]) -> dict[str, FoldState]:
    explicit = {k: st for ax, k, st in spec.folds if ax is axis}
    unknown = set(explicit) - set(keys)
    if unknown:
        raise ParameterError(
            f"fold names unknown value {sorted(unknown)!r} on axis {axis.value}"
        )
    maxed = next((k for k, st in explicit.items() if st is FoldState.MAXIMIZED), None)
    if maxed is None:
        return explicit
    states = {k: FoldState.MINIMIZED for k in keys if k != maxed}
    states[maxed] = FoldState.MAXIMIZED
    return states


def _segment_widths(
    keys: Sequence[str],
    natural: Sequence[int],
    states: Mapping[str, FoldState],
    extent: int,
    gutter: int,
) -> list[int]:
    """Fold-aware widths: minimized keys get the fixed strip, the rest share
    the freed extent proportionally to their natural (unfolded) widths."""
    n = len(keys)
    minimized = [k for k in keys if states.get(k) is FoldState.MINIMIZED]
    open_keys = [k for k in keys if states.get(k) is not FoldState.MINIMIZED]
    avail = extent - gutter * (n - 1) - FOLD_WIDTH * len(minimized)
    if open_keys and avail < len(open_keys):
        raise ParameterError("folded layout leaves no room for open segments")
    if not open_keys and avail < 0:
        raise CapacityError(f"extent {extent} px cannot hold {n} minimized strips")
    natural_open = [w for k, w in zip(keys, natural) if states.get(k) is not FoldState.MINIMIZED]
    total_nat = sum(natural_open)
    widths = []
    produced = 0
    open_seen = 0
    for k, nat in zip(keys, natural):
        if states.get(k) is FoldState.MINIMIZED:
            widths.append(FOLD_WIDTH)
            continue
        open_seen += 1
        if open_seen == len(open_keys):
            widths.append(avail - produced)  # last open segment absorbs rounding
        else:
            w = int(avail * nat / total_nat)
            widths.append(w)
            produced += w
    return widths


def _axis_plan(
    dataset: Dataset,
    spec: GatherplotSpec,
    axis: Axis,
    dim_name: str | None,
    extent: int,
    cross_extent: int,
) -> _AxisPlan:
    n_points = len(dataset)
    if dim_name is None:
        if any(ax is axis for ax, _, _ in spec.folds):
            raise ParameterError(f"cannot fold undefined axis {axis.value}")
        seg = Segment("", (0.0, float(extent)), tuple(dataset.point_ids))
        t = GatherTransform((seg,), SizingPolicy.EQUAL_SEGMENTS, 8.0, 0.0)
        return _AxisPlan(t, ("",), ("",) * n_points, frozenset())

    dim = dataset.dimension(dim_name)
    warnings: list[str] = []
    quantizer = None
    dot = None

    if dim.kind is Kind.CATEGORICAL:
        keys = dim.categories
        groups = group_ids_by_value(dataset, dim_name)
        gutter = GUTTER_DEFAULT
        col = dataset.values(dim_name)
        key_of = tuple(col)
        natural = _equal_natural_widths(len(keys), extent, gutter)
    else:
        res = bin_continuous(dim, dataset.values(dim_name), extent, cross_extent)
        quantizer, dot = res.quantizer, res.dot_size
        if res.legibility_warning:
            warnings.append(f"axis {axis.value}: dot size clamped to 1 px for legibility")
        keys = quantizer.labels
        groups = group_ids_by_value(dataset, dim_name, quantizer)
        gutter = 0
        labels = quantizer.labels
        bins = quantizer.classify_many(dataset.values(dim_name))
        key_of = tuple(labels[int(b)] for b in bins)
        natural = _bin_natural_widths(quantizer.bin_count, dot, extent)

    states = _fold_states(spec, axis, keys)
    if states:
        widths = _segment_widths(keys, natural, states, extent, gutter)
    else:
        widths = list(natural)

    segments = []
    cursor = 0
    for key, width in zip(keys, widths):
        segments.append(
            Segment(key, (float(cursor), float(cursor + width)), tuple(groups.get(key, ())))
        )
        cursor += width + gutter
    transform = GatherTransform(
        tuple(segments), SizingPolicy.EQUAL_SEGMENTS, float(dot) if dot else 8.0, float(gutter)
    )
    minimized = frozenset(k for k, st in states.items() if st is FoldState.MINIMIZED)
    return _AxisPlan(transform, tuple(keys), key_of, minimized, quantizer, dot, tuple(warnings))


def _equal_natural_widths(n: int, extent: int, gutter: int) -> list[int]:
    avail = extent - gutter * (n - 1)
    if avail < n:
        raise CapacityError(f"extent {extent} px cannot hold {n} segments")
    base, rem = divmod(avail, n)
    return [base + 1 if i < rem else base for i in range(n)]


def _bin_natural_widths(nbins: int, dot: int, extent: int) -> list[int]:
    widths = [dot] * nbins
    widths[-1] = extent - dot * (nbins - 1)  # final bin absorbs the remainder
    return widths


def _color_lookup(dataset: Dataset, color_dim: str | None):
    """Returns (color_of(pid), ordered legend keys, ordering dimension)."""
    if color_dim is None:
        return (lambda _pid: ""), (), None
    dim = dataset.dimension(color_dim)
    if dim.kind is Kind.CATEGORICAL:
        col = dataset.values(color_dim)
        return (lambda pid: col[pid]), dim.categories, dim
    # continuous color: quantize to a handful of bins for the palette
    from .data_model import FixedCount, quantize

    q = quantize(dim, FixedCount(7))
    bins = q.classify_many(dataset.values(color_dim))
    keys = tuple(q.labels[int(b)] for b in bins)
    return (lambda pid: keys[pid]), q.labels, dim


def layout_gatherplot(dataset: Dataset, spec: GatherplotSpec) -> PlotLayout:
    """Resolve the full plot: per-axis gather transforms, cell membership,
    mode-specific packing, folds, ticks, and legend."""
    region = Rect(
        float(int(spec.region.x)),
        float(int(spec.region.y)),
        float(int(spec.region.w)),
        float(int(spec.region.h)),
    )
    for name in (spec.x_dim, spec.y_dim, spec.color_dim):
        if name is not None and not dataset.has_dimension(name):
            raise UnknownDimensionError(name)

    color_of, legend_keys, color_dim_obj = _color_lookup(dataset, spec.color_dim)
    legend = tuple((k, i) for i, k in enumerate(legend_keys))

    if (
        spec.x_dim is not None
        and spec.x_dim == spec.y_dim
        and dataset.dimension(spec.x_dim).kind is Kind.CONTINUOUS
    ):
        return _layout_diagonal(dataset, spec, region, color_of, color_dim_obj, legend)

    xplan = _axis_plan(dataset, spec, Axis.X, spec.x_dim, int(region.w), int(region.h))
    yplan = _axis_plan(dataset, spec, Axis.Y, spec.y_dim, int(region.h), int(region.w))
    warnings = list(xplan.warnings) + list(yplan.warnings)

    xsegs = {s.value_key: s for s in xplan.transform.segments}
    ysegs = {s.value_key: s for s in yplan.transform.segments}

    cells: dict[tuple[str, str], list[int]] = {}
    for yk in yplan.keys:
        for xk in xplan.keys:
            cells[(xk, yk)] = []
    for pid in dataset.point_ids:
        cells[(xplan.key_of[pid], yplan.key_of[pid])].append(pid)

    boxes: dict[tuple[str, str], Rect] = {}
    for (xk, yk) in cells:
        xs, ys = xsegs[xk], ysegs[yk]
        boxes[(xk, yk)] = Rect(region.x + xs.lo, region.y + ys.lo, xs.width, ys.width)

    if color_dim_obj is not None:
        for members in cells.values():
            members[:] = order_within_segment(members, dataset, color_dim_obj)

    folded_keys = {
        key
        for key in cells
        if key[0] in xplan.minimized or key[1] in yplan.minimized
    }
    open_cells = {k: v for k, v in cells.items() if k not in folded_keys}
    open_boxes = {k: boxes[k] for k in open_cells}

    open_x = [s for s in xplan.transform.segments if s.value_key not in xplan.minimized]
    open_y = [s for s in yplan.transform.segments if s.value_key not in yplan.minimized]
    mean_w = sum(s.width for s in open_x) / len(open_x) if open_x else region.w
    mean_h = sum(s.width for s in open_y) / len(open_y) if open_y else region.h
    mode = resolve_mode(spec, mean_w / mean_h)

    if mode is Mode.ABSOLUTE:
        open_groups, _m, warned = layout_absolute(open_cells, open_boxes, color_of)
        if warned:
            warnings.append("mark size clamped to 1 px; densest cell overflows")
    elif mode is Mode.NORMALIZED:
        open_groups = layout_normalized(open_cells, open_boxes, color_of)
    else:
        k = spec.streamgraph_k or choose_streamgraph_k(open_cells, open_boxes)
        open_groups = layout_streamgraph(open_cells, open_boxes, k, color_of)

    by_key = {g.cell_key: g for g in open_groups}
    groups: list[GroupLayout] = []
    for (xk, yk), members in cells.items():
        if (xk, yk) in folded_keys:
            box = boxes[(xk, yk)]
            along_y = xk in xplan.minimized  # x-strip tiles along the cross (y) axis
            groups.append(_layout_strip((xk, yk), members, box, along_y, color_of))
        else:
            groups.append(by_key[(xk, yk)])

    ticks: list[BracketTick] = []
    if spec.x_dim is not None:
        ticks.extend(bracket_ticks(xplan.transform, Axis.X, offset=region.x))
    if spec.y_dim is not None:
        ticks.extend(bracket_ticks(yplan.transform, Axis.Y, offset=region.y))

    return PlotLayout(
        region=region,
        groups=tuple(groups),
        ticks=tuple(ticks),
        mode_used=mode,
        legend=legend,
        warnings=tuple(warnings),
    )


def _layout_diagonal(
    dataset: Dataset,
    spec: GatherplotSpec,
    region: Rect,
    color_of,
    color_dim_obj,
    legend,
) -> PlotLayout:
    """Same continuous variable on both axes: bin once, place each bin's group
    in a vertical strip of the bin's width centered on the plot diagonal, so
    the arrangement reads as the rotated, binned version of the scatterplot's
    diagonal line."""
    if spec.folds:
        raise ParameterError("folds are not supported for the same-variable layout")
    dim = dataset.dimension(spec.x_dim)
    values = dataset.values(spec.x_dim)
    res = bin_continuous(dim, values, int(region.w), int(region.h))
    q = res.quantizer
    warnings = (
        ("dot size clamped to 1 px for legibility",) if res.legibility_warning else ()
    )

    groups_by_bin = group_ids_by_value(dataset, spec.x_dim, q)
    widths = _bin_natural_widths(q.bin_count, res.dot_size, int(region.w))
    segments = []
    cursor = 0
    for key, width in zip(q.labels, widths):
        segments.append(Segment(key, (float(cursor), float(cursor + width)), tuple(groups_by_bin.get(key, ()))))
        cursor += width
    xtransform = GatherTransform(tuple(segments), SizingPolicy.EQUAL_SEGMENTS, float(res.dot_size), 0.0)

    if color_dim_obj is not None:
        groups_by_bin = {
            k: order_within_segment(v, dataset, color_dim_obj) for k, v in groups_by_bin.items()
        }

    # global mark size: largest that packs every bin inside its strip
    counts = {s.value_key: len(s.member_ids) for s in segments}
    top = min(MARK_SIZE_CAP, max(MARK_SIZE_FLOOR, max(widths)))
    m = None
    for cand in range(top, MARK_SIZE_FLOOR - 1, -1):
        ok = True
        for seg, width in zip(segments, widths):
            count = counts[seg.value_key]
            if count == 0:
                continue
            cols = width // cand
            if cols < 1 or math.ceil(count / cols) * cand > region.h:
                ok = False
                break
        if ok:
            m = cand
            break
    if m is None:
        m = MARK_SIZE_FLOOR
        warnings = warnings + ("mark size clamped to 1 px; densest bin overflows",)

    groups: list[GroupLayout] = []
    ysegs: list[Segment] = []
    for seg, width in zip(segments, widths):
        members = groups_by_bin.get(seg.value_key, [])
        count = len(members)
        frac_lo = seg.lo / region.w
        frac_hi = seg.hi / region.w
        # value axis runs upward on screen: smallest bin at the bottom
        y_hi = region.y + region.h * (1 - frac_lo)
        y_lo = region.y + region.h * (1 - frac_hi)
        ysegs.append(Segment(seg.value_key, (y_lo, y_hi), seg.member_ids))
        cols = max(1, width // m)
        rows = math.ceil(count / cols) if count else 1
        strip_h = min(int(region.h), max(m * rows, int(y_hi - y_lo)))
        cy = (y_lo + y_hi) / 2
        y0 = int(min(max(region.y, cy - strip_h / 2), region.y1 - strip_h))
        box = Rect(region.x + seg.lo, float(y0), float(width), float(strip_h))
        marks, grid = _pack_or_tile(members, box, m, color_of)
        groups.append(GroupLayout((seg.value_key, seg.value_key), box, marks, grid))

    ticks = list(bracket_ticks(xtransform, Axis.X, offset=region.x))
    # mirror the bins onto the y axis so both axes read the same variable
    yticks_transform = GatherTransform(
        tuple(sorted(ysegs, key=lambda s: s.lo)), SizingPolicy.EQUAL_SEGMENTS, float(res.dot_size), 0.0
    )
    ticks.extend(bracket_ticks(yticks_transform, Axis.Y, offset=region.y))

    return PlotLayout(
        region=region,
        groups=tuple(groups),
        ticks=tuple(ticks),
        mode_used=Mode.ABSOLUTE,
        legend=legend,
        warnings=warnings,
    )


def fold_axis(
    dataset: Dataset,
    spec: GatherplotSpec,
    axis: Axis | str,
    value_key: str,
    state: FoldState | str | None,
) -> tuple[GatherplotSpec, PlotLayout]:
    """Apply (or clear, with state None) one fold and re-emit the layout."""
    new_spec = spec.with_fold(Axis(axis), value_key, None if state is None else FoldState(state))
    return new_spec, layout_gatherplot(dataset, new_spec)


def parse_fold_arg(arg: str) -> tuple[Axis, str, FoldState]:
    """Parse the 'axis=value:state' fold syntax used by the CLI and service,
    e.g. 'x=Crew:min' or 'y=Adult:max'."""
    try:
        axis_part, rest = arg.split("=", 1)
        value, state_part = rest.rsplit(":", 1)
        return Axis(axis_part.strip().lower()), value, FoldState(state_part.strip().lower())
    except ValueError:
        raise ParameterError(
            f"bad fold {arg!r}; expected axis=value:state, e.g. x=Crew:min"
        ) from None
