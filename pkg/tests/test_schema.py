import json
from importlib import resources

import jsonschema
import pytest

from gatherplot import GatherplotSpec, Mode, Rect, layout_gatherplot
from gatherplot.lens import LensMode, LensSpec, capture, layout_lens, scatter_positions
from gatherplot.schema import layout_document, lens_document, to_bytes


@pytest.fixture(scope="module")
def geometry_schema():
    raw = resources.files("gatherplot").joinpath("geometry.schema.json").read_text()
    return json.loads(raw)


def validate(doc, schema):
    jsonschema.validate(doc, schema)


class TestLayoutDocument:
    def test_titanic_document_validates(self, titanic, geometry_schema):
        for mode in (Mode.ABSOLUTE, Mode.NORMALIZED, Mode.STREAMGRAPH):
            spec = GatherplotSpec(
                region=Rect(0, 0, 800, 500),
                x_dim="class", y_dim="sex", color_dim="survived", mode=mode,
            )
            doc = layout_document(layout_gatherplot(titanic, spec))
            validate(doc, geometry_schema)
            assert doc["mark_count"] == 2201

    def test_folded_document_validates(self, titanic, geometry_schema):
        spec = GatherplotSpec(
            region=Rect(0, 0, 800, 500),
            x_dim="class",
            folds=(("x", "Crew", "min"),),
        )
        doc = layout_document(layout_gatherplot(titanic, spec))
        validate(doc, geometry_schema)

    def test_canonical_bytes_stable(self, titanic):
        spec = GatherplotSpec(region=Rect(0, 0, 640, 480), x_dim="class", color_dim="sex")
        a = to_bytes(layout_document(layout_gatherplot(titanic, spec)))
        b = to_bytes(layout_document(layout_gatherplot(titanic, spec)))
        assert a == b
        assert b"\n" not in a  # compact canonical form

    def test_mark_count_equals_marks_in_document(self, titanic):
        spec = GatherplotSpec(region=Rect(0, 0, 640, 480), x_dim="class", y_dim="age")
        doc = layout_document(layout_gatherplot(titanic, spec))
        assert doc["mark_count"] == sum(len(g["marks"]) for g in doc["groups"])


class TestLensDocument:
    def test_lens_documents_validate(self, airline, geometry_schema):
        scatter = scatter_positions(airline, "dep_delay", "arr_delay", Rect(0, 0, 800, 600))
        for mode in (LensMode.STANDARD, LensMode.HISTOGRAM, LensMode.PIE):
            spec = LensSpec(region=Rect(150, 150, 220, 200), mode=mode, group_dim="day")
            lens = layout_lens(capture(scatter, spec), airline, spec)
            doc = lens_document(lens)
            validate(doc, geometry_schema)
            assert doc["suppressed"] == doc["lens"]["captured"]
