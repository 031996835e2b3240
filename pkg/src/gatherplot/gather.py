"""Per-axis gather transforms: segment a pixel extent by data value, pick the
mark sizing policy, and bin continuous dimensions at a dot-plot-compatible
bin width (bin width equals dot size)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .data_model import Dataset, Dimension, Kind, Quantizer, make_quantizer
from .errors import CapacityError, ParameterError

GUTTER_DEFAULT = 4          # px between segments; visual gap, not data
ADAPTIVE_MIN_WIDTH = 8      # px floor so sparse categories stay clickable
DOT_SIZE_CAP = 32           # px; ladder upper bound
DOT_SIZE_FLOOR = 1          # px; ladder lower bound
WILKINSON_FACTOR = 0.25     # seed dot size = 0.25 * n^(-1/2) of the axis length


class SizingPolicy(Enum):
    EQUAL_SEGMENTS = "equal"            # constant mark, equal segment widths
    DENSITY_SEGMENTS = "adaptive"       # constant mark, widths follow density
    PROPORTIONAL_MARK = "proportional"  # equal widths, mark scaled per count


@dataclass(frozen=True)
class Segment:
    """One value's slice of the axis. pixel_interval is [lo, hi) in axis-local
    pixels; member_ids are in display order."""

    value_key: str
    pixel_interval: tuple[float, float]
    member_ids: tuple[int, ...]
    mark_scale: float = 1.0

    @property
    def lo(self) -> float:
        return self.pixel_interval[0]

    @property
    def hi(self) -> float:
        return self.pixel_interval[1]

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class GatherTransform:
    segments: tuple[Segment, ...]
    sizing_policy: SizingPolicy
    mark_size: float
    gutter: float

    def __post_init__(self):
        prev_hi = None
        seen: set[int] = set()
        for seg in self.segments:
            if not seg.lo < seg.hi:
                raise ParameterError(f"segment {seg.value_key!r} has empty interval")
            if prev_hi is not None and seg.lo < prev_hi:
                raise ParameterError("segments must be ordered and disjoint")
            prev_hi = seg.hi
            for pid in seg.member_ids:
                if pid in seen:
                    raise ParameterError(f"point {pid} assigned to two segments")
                seen.add(pid)

    @property
    def n(self) -> int:
        return len(self.segments)

    def member_count(self) -> int:
        return sum(len(s.member_ids) for s in self.segments)


@dataclass(frozen=True)
class BinningResult:
    quantizer: Quantizer
    dot_size: int
    densest_bin_count: int
    legibility_warning: bool = False


def _domain_keys(source: Dimension | Quantizer) -> tuple[str, ...]:
    if isinstance(source, Quantizer):
        return source.labels
    if source.kind is not Kind.CATEGORICAL:
        raise ParameterError(
            f"dimension {source.name!r} is continuous; quantize it before segmenting"
        )
    return source.categories


def _axis_name(source: Dimension | Quantizer) -> str:
    return source.source.name if isinstance(source, Quantizer) else source.name


def _snap_widths(real_widths: Sequence[float], total: int) -> list[int]:
    """Integer widths summing to `total`, remainder pixels left-to-right."""
    floors = [int(w) for w in real_widths]
    rem = total - sum(floors)
    out = []
    for i, w in enumerate(floors):
        out.append(w + 1 if i < rem else w)
    return out


def _adaptive_widths(counts: Sequence[int], avail: int, floor: int) -> list[int]:
    """Widths proportional to counts with a clamp at `floor`, waterfilling the
    clamped pixels back into the unclamped segments."""
    n = len(counts)
    clamped = [False] * n
    widths = [0.0] * n
    while True:
        free = avail - floor * sum(clamped)
        weight = sum(c for c, cl in zip(counts, clamped) if not cl)
        newly = False
        for i, c in enumerate(counts):
            if clamped[i]:
                widths[i] = float(floor)
                continue
            w = free * (c / weight) if weight > 0 else free / max(1, (n - sum(clamped)))
            if w < floor:
                clamped[i] = True
                newly = True
            else:
                widths[i] = w
        if not newly:
            break
    # integer-snap only the unclamped ones; clamped stay exactly at floor
    free = avail - floor * sum(clamped)
    open_idx = [i for i in range(n) if not clamped[i]]
    snapped = _snap_widths([widths[i] for i in open_idx], free)
    for i, w in zip(open_idx, snapped):
        widths[i] = w
    return [int(w) for w in widths]


def build_segments(
    source: Dimension | Quantizer,
    ids_by_value: Mapping[str, Sequence[int]],
    extent: float,
    policy: SizingPolicy = SizingPolicy.EQUAL_SEGMENTS,
    gutter: float = GUTTER_DEFAULT,
    mark_size: float = ADAPTIVE_MIN_WIDTH,
) -> GatherTransform:
    """Partition `extent` pixels into one segment per domain value.

    Unknown keys in ids_by_value are an error (points would be dropped
    silently otherwise); domain values without points become empty segments
    so the full domain stays on the axis.
    """
    keys = _domain_keys(source)
    unknown = set(ids_by_value) - set(keys)
    if unknown:
        raise ParameterError(f"ids grouped under unknown keys {sorted(unknown)!r}")

    n = len(keys)
    extent_px = int(extent)
    gutter_px = max(0, int(round(gutter)))
    avail = extent_px - gutter_px * (n - 1)
    floor = max(1, int(math.ceil(max(mark_size, ADAPTIVE_MIN_WIDTH))))

    min_width = floor if policy is SizingPolicy.DENSITY_SEGMENTS else 1
    if avail < n * min_width:
        raise CapacityError(
            f"axis {_axis_name(source)!r}: extent {extent_px} px cannot hold "
            f"{n} segments at minimum width {min_width} px (gutter {gutter_px} px)"
        )

    counts = [len(ids_by_value.get(k, ())) for k in keys]
    if policy is SizingPolicy.DENSITY_SEGMENTS:
        widths = _adaptive_widths(counts, avail, floor)
    else:
        widths = _snap_widths([avail / n] * n, avail)

    max_count = max(counts) if any(counts) else 1
    segments = []
    cursor = 0
    for key, width, count in zip(keys, widths, counts):
        scale = (count / max_count) if policy is SizingPolicy.PROPORTIONAL_MARK else 1.0
        segments.append(
            Segment(
                value_key=key,
                pixel_interval=(float(cursor), float(cursor + width)),
                member_ids=tuple(ids_by_value.get(key, ())),
                mark_scale=scale,
            )
        )
        cursor += width + gutter_px
    return GatherTransform(
        segments=tuple(segments),
        sizing_policy=policy,
        mark_size=float(mark_size),
        gutter=float(gutter_px),
    )


def _pixel_aligned_quantizer(dim: Dimension, dot_size: int, extent_main: int) -> Quantizer:
    lo, hi = dim.range
    if lo == hi:
        return make_quantizer(dim, (lo, hi))
    nbins = max(1, extent_main // dot_size)
    edges = [lo + (hi - lo) * (i * dot_size) / extent_main for i in range(nbins)]
    edges.append(hi)  # final bin absorbs the sub-dot remainder and is closed
    return make_quantizer(dim, edges)


def dot_size_ladder(n_values: int, extent_main: float) -> list[int]:
    """Descending integer dot-size candidates, seeded by the dot-plot rule
    0.25 * n^(-1/2) of the axis length, capped and floored."""
    seed = math.floor(WILKINSON_FACTOR / math.sqrt(n_values) * extent_main)
    start = min(DOT_SIZE_CAP, max(DOT_SIZE_FLOOR, seed))
    return list(range(start, DOT_SIZE_FLOOR - 1, -1))


def bin_continuous(
    dim: Dimension,
    values: Sequence[float],
    extent_main: float,
    extent_cross: float,
) -> BinningResult:
    """Choose the largest dot size whose densest bin stacks within the cross
    extent, with bin width equal to dot size (accuracy/legibility trade-off:
    larger dots mean coarser bins)."""
    if dim.kind is not Kind.CONTINUOUS:
        raise ParameterError(f"dimension {dim.name!r} is not continuous")
    if not values:
        raise ParameterError("bin_continuous needs at least one value")
    if extent_main <= 0 or extent_cross <= 0:
        raise ParameterError("extents must be positive")

    extent_main_px = max(1, int(extent_main))
    arr = np.asarray(values, dtype=np.float64)
    for d in dot_size_ladder(len(values), extent_main_px):
        q = _pixel_aligned_quantizer(dim, d, extent_main_px)
        densest = int(np.bincount(q.classify_many(arr), minlength=q.bin_count).max())
        if densest * d <= extent_cross:
            return BinningResult(q, d, densest, legibility_warning=False)

    q = _pixel_aligned_quantizer(dim, DOT_SIZE_FLOOR, extent_main_px)
    densest = int(np.bincount(q.classify_many(arr), minlength=q.bin_count).max())
    return BinningResult(q, DOT_SIZE_FLOOR, densest, legibility_warning=True)


def order_within_segment(
    member_ids: Sequence[int],
    dataset: Dataset,
    order_dim: Dimension | None = None,
) -> list[int]:
    """Sort members by the ordering dimension's category order (value order
    for continuous), ties by point_id; no dimension means input order."""
    if order_dim is None:
        return list(member_ids)
    if order_dim.kind is Kind.CATEGORICAL:
        rank = order_dim.category_rank
        key = lambda pid: (rank[dataset.value_of(pid, order_dim.name)], pid)  # noqa: E731
    else:
        key = lambda pid: (dataset.value_of(pid, order_dim.name), pid)  # noqa: E731
    return sorted(member_ids, key=key)


def group_ids_by_value(
    dataset: Dataset, dim_name: str | None, quantizer: Quantizer | None = None
) -> dict[str, list[int]]:
    """Group point ids by category (or by bin label when a quantizer is
    given). An undefined axis groups everything under the empty key."""
    if dim_name is None:
        return {"": list(dataset.point_ids)}
    dim = dataset.dimension(dim_name)
    out: dict[str, list[int]] = {}
    if quantizer is not None:
        labels = quantizer.labels
        bins = quantizer.classify_many(dataset.values(dim_name))
        for pid, b in zip(dataset.point_ids, bins):
            out.setdefault(labels[int(b)], []).append(pid)
    else:
        if dim.kind is not Kind.CATEGORICAL:
            raise ParameterError(f"dimension {dim_name!r} needs a quantizer to group")
        col = dataset.values(dim_name)
        for pid, v in zip(dataset.point_ids, col):
            out.setdefault(v, []).append(pid)
    return out
