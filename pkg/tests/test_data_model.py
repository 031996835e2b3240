import pytest
from hypothesis import given, strategies as st

from gatherplot import (
    DataFormatError,
    Dimension,
    EmptyDatasetError,
    FixedCount,
    FixedWidth,
    Kind,
    ParameterError,
    ingest_csv,
    quantize,
)


class TestIngest:
    def test_titanic_shape(self, titanic):
        assert len(titanic) == 2201
        assert all(d.kind is Kind.CATEGORICAL for d in titanic.dimensions)
        assert len(titanic.dimensions) == 4
        assert len(titanic.dimension("class").categories) == 4
        assert len(titanic.dimension("sex").categories) == 2

    def test_header_only_is_empty_dataset(self):
        with pytest.raises(EmptyDatasetError):
            ingest_csv(b"a,b,c\n")

    def test_empty_input(self):
        with pytest.raises(EmptyDatasetError):
            ingest_csv(b"")

    def test_ragged_row_names_row(self):
        data = b"a,b\n1,2\n3\n"
        with pytest.raises(DataFormatError, match="row 3"):
            ingest_csv(data)

    def test_mixed_typing_against_hand_schema(self):
        # 50 distinct numbers in col "v"; "tag" and "grp" stay categorical
        lines = ["v,tag,grp"]
        for i in range(50):
            lines.append(f"{i * 1.5},t{i % 3},g{i % 2}")
        ds = ingest_csv("\n".join(lines).encode())
        assert ds.dimension("v").kind is Kind.CONTINUOUS
        assert ds.dimension("tag").kind is Kind.CATEGORICAL
        assert ds.dimension("grp").kind is Kind.CATEGORICAL
        assert ds.dimension("v").range == (0.0, 49 * 1.5)

    def test_small_numeric_domain_stays_categorical(self, cars):
        cyl = cars.dimension("Cylinders")
        assert cyl.kind is Kind.CATEGORICAL
        assert cyl.categories == ("3", "4", "5", "6", "8")  # ascending numeric

    def test_hint_overrides_kind(self):
        data = b"x\n1\n2\n3\n"
        ds = ingest_csv(data, hints={"x": "continuous"})
        assert ds.dimension("x").kind is Kind.CONTINUOUS

    def test_missing_cells_dropped_and_counted(self):
        data = b"a,b\n1,x\n,y\n3,z\n"
        ds = ingest_csv(data)
        assert len(ds) == 2
        assert ds.dropped_rows == 1

    def test_point_ids_dense(self, titanic):
        assert titanic.point_ids == tuple(range(2201))

    def test_quoted_cells(self):
        data = b'name,note\nA,"hello, world"\nB,"line\nbreak"\n'
        ds = ingest_csv(data)
        assert len(ds) == 2
        assert ds.values("note")[0] == "hello, world"

    def test_roundtrip_preserves_dimensions_and_count(self, titanic, cars):
        for ds in (titanic, cars):
            again = ingest_csv(ds.to_csv())
            assert again.dimensions == ds.dimensions
            assert len(again) == len(ds)

    def test_descriptor_fields(self, cars):
        desc = cars.descriptor()
        assert desc["schema_version"] == 1
        assert desc["row_count"] == len(cars)
        by_name = {d["name"]: d for d in desc["dimensions"]}
        assert by_name["MPG"]["kind"] == "continuous"
        assert by_name["MPG"]["range"] == [9.0, 46.6]
        assert by_name["Origin"]["categories"] == ["USA", "Japan", "Europe"]


class TestQuantize:
    def test_decade_bins(self):
        ages = Dimension("age", Kind.CONTINUOUS, range=(0.0, 80.0))
        q = quantize(ages, FixedCount(8))
        assert list(q.bin_edges) == [0, 10, 20, 30, 40, 50, 60, 70, 80]
        assert q.labels[2] == "[20, 30)"
        assert q.labels[-1] == "[70, 80]"

    def test_constant_column_degenerates_to_one_bin(self):
        dim = Dimension("c", Kind.CONTINUOUS, range=(5.0, 5.0))
        q = quantize(dim, FixedCount(3))
        assert q.bin_count == 1
        assert q.labels == ("[5, 5]",)
        assert q.classify(5.0) == 0

    def test_fixed_width_mpg(self, cars):
        q = quantize(cars.dimension("MPG"), FixedWidth(10.0))
        assert q.bin_count == 4
        assert list(q.bin_edges) == [9.0, 19.0, 29.0, 39.0, 49.0]
        assert q.labels[-1] == "[39.0, 49.0]"

    def test_bad_parameters(self):
        dim = Dimension("x", Kind.CONTINUOUS, range=(0.0, 1.0))
        with pytest.raises(ParameterError):
            quantize(dim, FixedCount(0))
        with pytest.raises(ParameterError):
            quantize(dim, FixedWidth(0.0))
        with pytest.raises(ParameterError):
            quantize(Dimension("c", Kind.CATEGORICAL, categories=("a",)), FixedCount(2))

    def test_half_open_interior_closed_final(self):
        dim = Dimension("x", Kind.CONTINUOUS, range=(0.0, 30.0))
        q = quantize(dim, FixedCount(3))
        assert q.classify(10.0) == 1   # interior edge belongs to the upper bin
        assert q.classify(30.0) == 2   # max belongs to the final (closed) bin
        assert q.classify(9.999) == 0

    @given(
        st.integers(min_value=1, max_value=40),
        st.lists(st.floats(min_value=-50, max_value=150, allow_nan=False), min_size=2, max_size=40),
    )
    def test_total_and_monotone(self, k, values):
        dim = Dimension("x", Kind.CONTINUOUS, range=(0.0, 100.0))
        q = quantize(dim, FixedCount(k))
        bins = [q.classify(v) for v in values]
        assert all(0 <= b < q.bin_count for b in bins)
        for v1 in values:
            for v2 in values:
                if v1 <= v2:
                    assert q.classify(v1) <= q.classify(v2)
