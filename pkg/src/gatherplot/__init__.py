"""Gatherplot: overlap-free unit-visualization layout engine.

Converts tabular data into packed, identity-preserving plot geometry,
diagnoses overplotting, renders SVG, and serves layouts over HTTP.
"""

from .data_model import (
    Dataset,
    Dimension,
    FixedCount,
    FixedWidth,
    Kind,
    Quantizer,
    ingest_csv,
    quantize,
)
from .errors import (
    CapacityError,
    DataFormatError,
    EmptyDatasetError,
    GatherplotError,
    ParameterError,
    UnknownDimensionError,
)
from .geom import Rect
from .layout import (
    Axis,
    FoldState,
    GatherplotSpec,
    GroupLayout,
    MarkGeometry,
    Mode,
    PlotLayout,
    fold_axis,
    layout_gatherplot,
    resolve_mode,
)
from .overlap import OverlapReport, VisualTransform, overlap_index_1d, overplotting_index_2d

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "CapacityError",
    "DataFormatError",
    "Dataset",
    "Dimension",
    "EmptyDatasetError",
    "FixedCount",
    "FixedWidth",
    "FoldState",
    "GatherplotError",
    "GatherplotSpec",
    "GroupLayout",
    "Kind",
    "MarkGeometry",
    "Mode",
    "OverlapReport",
    "ParameterError",
    "PlotLayout",
    "Quantizer",
    "Rect",
    "UnknownDimensionError",
    "VisualTransform",
    "fold_axis",
    "ingest_csv",
    "layout_gatherplot",
    "overlap_index_1d",
    "overplotting_index_2d",
    "quantize",
    "resolve_mode",
]
