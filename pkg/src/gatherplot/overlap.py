"""Pairwise overlap and overplotting diagnostics.

A pair of points overlaps along one visual transformation when their axis
coordinates land closer than the mark size (strictly: tangent marks do not
overlap). A pair overplots in 2D when it overlaps on both axes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import ParameterError

BRUTE_FORCE_LIMIT = 64     # below this, plain double loops beat the sweep
PAIR_SAMPLE_CAP = 16       # exemplar pairs kept in reports
_CHUNK_PAIRS = 2_000_000   # candidate pairs per sweep chunk, bounds memory


@dataclass(frozen=True)
class VisualTransform:
    """Value-to-axis-coordinate mapping plus a scalar mark size in pixels."""

    f: Callable[[object], float]
    s: float

    def __post_init__(self):
        if not self.s > 0:
            raise ParameterError("mark size must be > 0")

    def coords(self, values: Sequence) -> np.ndarray:
        return np.asarray([float(self.f(v)) for v in values], dtype=np.float64)


@dataclass(frozen=True)
class OverlapReport:
    """Pairwise diagnostics for one dataset under two visual transformations.

    Indices are computed from the scalar per-transform mark size; layouts
    that later stretch marks (normalized mode) are not re-measured here.
    """

    overlap_x: int
    overlap_y: int
    overplotting: int
    pair_samples: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "overlap_x": self.overlap_x,
            "overlap_y": self.overlap_y,
            "overplotting": self.overplotting,
            "samples": [list(p) for p in self.pair_samples],
        }


def _candidate_chunks(c: np.ndarray, order: np.ndarray, s: float) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (i, j) index pairs (into the sorted order) whose sorted coords
    might satisfy |c_i - c_j| < s.

    The window is widened by a few ulps and callers re-filter with the exact
    predicate, so float rounding at the boundary can never change a count.
    """
    cs = c[order]
    margin = (np.abs(cs) + abs(s)) * 1e-12
    lo = np.searchsorted(cs, cs - s - margin, side="left")
    idx = np.arange(len(cs))
    reps = idx - lo
    np.clip(reps, 0, None, out=reps)

    start = 0
    n = len(cs)
    while start < n:
        stop = start
        budget = 0
        while stop < n and (budget == 0 or budget + reps[stop] <= _CHUNK_PAIRS):
            budget += reps[stop]
            stop += 1
        block = reps[start:stop]
        total = int(block.sum())
        if total:
            j = np.repeat(idx[start:stop], block)
            offsets = np.cumsum(block) - block
            i = np.arange(total) - np.repeat(offsets, block) + np.repeat(lo[start:stop], block)
            yield i, j
        start = stop


def _count_pairs_1d(coords: np.ndarray, s: float) -> int:
    n = len(coords)
    if n < 2:
        return 0
    if n < BRUTE_FORCE_LIMIT:
        count = 0
        for j in range(n):
            for i in range(j):
                if abs(coords[i] - coords[j]) < s:
                    count += 1
        return count
    order = np.argsort(coords, kind="stable")
    cs = coords[order]
    count = 0
    for i, j in _candidate_chunks(coords, order, s):
        count += int(np.count_nonzero(np.abs(cs[i] - cs[j]) < s))
    return count


def overlap_index_1d(values: Sequence, t: VisualTransform) -> int:
    """Count unordered index-distinct pairs whose transformed coordinates are
    strictly closer than the mark size. Empty input counts zero pairs."""
    if len(values) == 0:
        return 0
    return _count_pairs_1d(t.coords(values), t.s)


def overplotting_index_2d(
    points: Sequence[tuple], tx: VisualTransform, ty: VisualTransform
) -> OverlapReport:
    """Count pairs overlapping on both axes; also reports each axis alone.

    Candidate pairs come from a sort-and-sweep on x and are filtered by the
    exact y predicate; the result is identical to the brute-force conjunction.
    """
    n = len(points)
    if n == 0:
        return OverlapReport(0, 0, 0)
    cx = tx.coords([p[0] for p in points])
    cy = ty.coords([p[1] for p in points])

    if n < BRUTE_FORCE_LIMIT:
        ox = oy = both = 0
        samples: list[tuple[int, int]] = []
        for j in range(n):
            for i in range(j):
                hit_x = abs(cx[i] - cx[j]) < tx.s
                hit_y = abs(cy[i] - cy[j]) < ty.s
                ox += hit_x
                oy += hit_y
                if hit_x and hit_y:
                    both += 1
                    if len(samples) < PAIR_SAMPLE_CAP:
                        samples.append((i, j))
        return OverlapReport(int(ox), int(oy), int(both), tuple(samples))

    overlap_y = _count_pairs_1d(cy, ty.s)
    order = np.argsort(cx, kind="stable")
    cxs, cys = cx[order], cy[order]
    overlap_x = 0
    both = 0
    samples = []
    for i, j in _candidate_chunks(cx, order, tx.s):
        hit_x = np.abs(cxs[i] - cxs[j]) < tx.s
        overlap_x += int(np.count_nonzero(hit_x))
        hit = hit_x & (np.abs(cys[i] - cys[j]) < ty.s)
        both += int(np.count_nonzero(hit))
        if len(samples) < PAIR_SAMPLE_CAP:
            for a, b in zip(order[i[hit]], order[j[hit]]):
                samples.append((min(int(a), int(b)), max(int(a), int(b))))
                if len(samples) >= PAIR_SAMPLE_CAP:
                    break
    return OverlapReport(overlap_x, overlap_y, both, tuple(samples))
