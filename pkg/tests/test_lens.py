import pytest

from gatherplot import Rect
from gatherplot.lens import LensMode, LensSpec, capture, layout_lens

from geometry_checks import count_interior_overlaps


def scatter_from(dataset, x_dim, y_dim, plot=Rect(0, 0, 800, 600), s=6.0):
    """Linear scatter mapping used as the lens base in tests."""
    xs = dataset.values(x_dim)
    ys = dataset.values(y_dim)
    x_lo, x_hi = dataset.dimension(x_dim).range
    y_lo, y_hi = dataset.dimension(y_dim).range
    out = []
    for pid in dataset.point_ids:
        fx = (xs[pid] - x_lo) / (x_hi - x_lo) if x_hi > x_lo else 0.5
        fy = (ys[pid] - y_lo) / (y_hi - y_lo) if y_hi > y_lo else 0.5
        out.append((pid, plot.x + fx * plot.w, plot.y + plot.h - fy * plot.h, s))
    return out


def capture_oracle(scatter, region):
    """Independent closed rectangle-intersection scan."""
    got = []
    for pid, cx, cy, s in scatter:
        x0, x1 = cx - s / 2, cx + s / 2
        y0, y1 = cy - s / 2, cy + s / 2
        if x0 <= region.x1 and region.x <= x1 and y0 <= region.y1 and region.y <= y1:
            got.append(pid)
    return got


class TestCapture:
    def test_empty_intersection(self, airline):
        scatter = scatter_from(airline, "dep_delay", "arr_delay")
        spec = LensSpec(region=Rect(-500, -500, 50, 50))
        assert capture(scatter, spec) == []

    def test_whole_plot_captures_all(self, airline):
        scatter = scatter_from(airline, "dep_delay", "arr_delay")
        spec = LensSpec(region=Rect(-10, -10, 900, 700))
        assert capture(scatter, spec) == list(range(3000))

    def test_matches_scan_oracle_on_airline_fixture(self, airline):
        scatter = scatter_from(airline, "dep_delay", "arr_delay")
        region = Rect(150, 120, 200, 200)
        got = capture(scatter, LensSpec(region=region))
        assert got == capture_oracle(scatter, region)
        assert 0 < len(got) < 3000

    def test_zero_area_region_captures_nothing(self, airline):
        scatter = scatter_from(airline, "dep_delay", "arr_delay")
        assert capture(scatter, LensSpec(region=Rect(400, 300, 0, 0))) == []

    def test_move_and_restore_roundtrip(self, airline):
        scatter = scatter_from(airline, "dep_delay", "arr_delay")
        home = LensSpec(region=Rect(200, 150, 180, 160))
        first = capture(scatter, home)
        elsewhere = capture(scatter, LensSpec(region=Rect(600, 400, 180, 160)))
        back = capture(scatter, home)
        assert back == first
        assert elsewhere != first


class TestLayoutLens:
    def test_pie_angles_proportional(self, airline):
        ds = _tiny_dataset(counts={"a": 1, "b": 1, "c": 2})
        spec = LensSpec(region=Rect(0, 0, 200, 200), mode=LensMode.PIE, group_dim="g")
        lens = layout_lens(list(range(4)), ds, spec)
        angles = [s.angle_end - s.angle_start for s in lens.sectors]
        assert angles == pytest.approx([90.0, 90.0, 180.0])
        assert sum(angles) == pytest.approx(360.0, abs=1e-9)

    def test_single_group_full_disc_and_column(self, airline):
        ds = _tiny_dataset(counts={"only": 7})
        pie = layout_lens(
            list(range(7)), ds, LensSpec(Rect(0, 0, 100, 100), LensMode.PIE, "g")
        )
        assert len(pie.sectors) == 1
        assert pie.sectors[0].angle_start == 0.0
        assert pie.sectors[0].angle_end == pytest.approx(360.0)
        hist = layout_lens(
            list(range(7)), ds, LensSpec(Rect(0, 0, 100, 100), LensMode.HISTOGRAM, "g")
        )
        col = hist.groups[0]
        assert col.box.h == 100.0  # full height column

    def test_pie_wedges_preserve_identity(self, airline):
        spec = LensSpec(region=Rect(100, 100, 240, 240), mode=LensMode.PIE, group_dim="day")
        scatter = scatter_from(airline, "dep_delay", "arr_delay")
        captured = capture(scatter, spec)
        lens = layout_lens(captured, airline, spec)
        wedge_ids = sorted(w.point_id for s in lens.sectors for w in s.wedges)
        assert wedge_ids == sorted(captured)
        assert lens.base_suppressed == tuple(captured)
        for s in lens.sectors:
            for w in s.wedges:
                assert s.angle_start - 1e-9 <= w.a0 <= w.a1 <= s.angle_end + 1e-9
                assert 0 <= w.r0 < w.r1 <= lens.radius + 1e-9

    def test_standard_two_equal_groups_no_overlap(self):
        ds = _tiny_dataset(counts={"a": 5, "b": 5})
        spec = LensSpec(region=Rect(0, 0, 300, 200), mode=LensMode.STANDARD, group_dim="g")
        lens = layout_lens(list(range(10)), ds, spec)
        assert lens.mark_count == 10
        sizes = {(g.box.w, g.box.h) for g in lens.groups}
        assert len(sizes) == 1  # equal stacked groups
        fake_layout = _as_layout(lens)
        assert count_interior_overlaps(fake_layout) == 0

    def test_histogram_heights_proportional(self):
        ds = _tiny_dataset(counts={"a": 2, "b": 4, "c": 8})
        spec = LensSpec(region=Rect(0, 0, 300, 200), mode=LensMode.HISTOGRAM, group_dim="g")
        lens = layout_lens(list(range(14)), ds, spec)
        by_key = {g.cell_key[0]: g for g in lens.groups}
        assert by_key["c"].box.h == 200.0
        assert by_key["b"].box.h == 100.0
        assert by_key["a"].box.h == 50.0
        baselines = {g.box.y1 for g in lens.groups}
        assert baselines == {200.0}  # common baseline

    def test_zero_captured_is_empty_not_error(self, airline):
        spec = LensSpec(region=Rect(0, 0, 100, 100), mode=LensMode.STANDARD, group_dim="day")
        lens = layout_lens([], airline, spec)
        assert lens.mark_count == 0 and lens.captured_ids == ()

    def test_region_too_narrow_for_groups_is_capacity_error(self, airline):
        from gatherplot import CapacityError

        spec = LensSpec(region=Rect(0, 0, 4, 100), mode=LensMode.STANDARD, group_dim="day")
        with pytest.raises(CapacityError):
            layout_lens([0, 1, 2], airline, spec)

    def test_count_conservation_per_group(self, airline):
        spec = LensSpec(region=Rect(150, 120, 260, 220), mode=LensMode.STANDARD, group_dim="day")
        scatter = scatter_from(airline, "dep_delay", "arr_delay")
        captured = capture(scatter, spec)
        lens = layout_lens(captured, airline, spec)
        day = airline.values("day")
        expected = {}
        for pid in captured:
            expected[day[pid]] = expected.get(day[pid], 0) + 1
        got = {g.cell_key[0]: len(g.marks) for g in lens.groups if g.marks}
        assert got == expected


def _tiny_dataset(counts):
    from gatherplot import Dataset, Dimension, Kind

    cats = tuple(counts)
    dims = (Dimension("g", Kind.CATEGORICAL, categories=cats),)
    records = tuple((k,) for k, n in counts.items() for _ in range(n))
    return Dataset(dims, records, tuple(range(len(records))))


def _as_layout(lens):
    """Adapt a LensLayout to the mark-overlap checker's interface."""
    from types import SimpleNamespace

    return SimpleNamespace(
        groups=[
            SimpleNamespace(marks=g.marks, folded=False, box=g.box, cell_key=g.cell_key)
            for g in lens.groups
        ],
        all_marks=lambda: (m for g in lens.groups for m in g.marks),
    )
