"""Tabular ingestion, dimension typing, and quantization of continuous dimensions."""

from __future__ import annotations

import csv
import io
import math
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import DataFormatError, EmptyDatasetError, ParameterError, UnknownDimensionError

# Numeric columns with at most this many distinct values stay categorical:
# small ordinal domains (cylinder counts, ratings) read better unbinned.
CATEGORICAL_MAX_DISTINCT = 12

SCHEMA_VERSION = 1


class Kind(str, Enum):
    CATEGORICAL = "categorical"
    CONTINUOUS = "continuous"


@dataclass(frozen=True)
class Dimension:
    """A typed column. Categorical dimensions carry their ordered category
    list; continuous ones carry their [min, max] data range."""

    name: str
    kind: Kind
    categories: tuple[str, ...] = ()
    range: tuple[float, float] | None = None

    def __post_init__(self):
        if self.kind is Kind.CATEGORICAL:
            if not self.categories:
                raise ParameterError(f"categorical dimension {self.name!r} needs categories")
            if len(set(self.categories)) != len(self.categories):
                raise ParameterError(f"duplicate categories in dimension {self.name!r}")
        else:
            if self.range is None:
                raise ParameterError(f"continuous dimension {self.name!r} needs a range")
            lo, hi = self.range
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                raise ParameterError(f"bad range {self.range} for dimension {self.name!r}")

    @cached_property
    def category_rank(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.categories)}

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "categories": list(self.categories) if self.kind is Kind.CATEGORICAL else None,
            "range": list(self.range) if self.range is not None else None,
        }


@dataclass(frozen=True)
class Dataset:
    """Immutable columnar table. Records hold floats for continuous
    dimensions and strings for categorical ones; point_ids are dense [0, n)."""

    dimensions: tuple[Dimension, ...]
    records: tuple[tuple, ...]
    point_ids: tuple[int, ...]
    dropped_rows: int = 0

    def __post_init__(self):
        n = len(self.records)
        if len(self.point_ids) != n:
            raise ParameterError("point_ids must match record count")
        if sorted(self.point_ids) != list(range(n)):
            raise ParameterError("point_ids must be unique and dense [0, n)")
        for rec in self.records:
            if len(rec) != len(self.dimensions):
                raise ParameterError("every record needs one value per dimension")

    def __len__(self) -> int:
        return len(self.records)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {d.name: i for i, d in enumerate(self.dimensions)}

    def dimension(self, name: str) -> Dimension:
        try:
            return self.dimensions[self._index[name]]
        except KeyError:
            raise UnknownDimensionError(name) from None

    def has_dimension(self, name: str) -> bool:
        return name in self._index

    def values(self, name: str) -> list:
        col = self._index.get(name)
        if col is None:
            raise UnknownDimensionError(name)
        return [rec[col] for rec in self.records]

    def value_of(self, point_id: int, name: str):
        return self.records[point_id][self._index[name]]

    def descriptor(self) -> dict:
        """Versioned, column-typed JSON descriptor of this dataset."""
        return {
            "schema_version": SCHEMA_VERSION,
            "row_count": len(self.records),
            "dropped_rows": self.dropped_rows,
            "dimensions": [d.to_json() for d in self.dimensions],
        }

    def to_csv(self) -> bytes:
        """Serialize back to RFC-4180 CSV; ingest_csv of the result reproduces
        the same dimensions and record count."""
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow([d.name for d in self.dimensions])
        for rec in self.records:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in rec])
        return buf.getvalue().encode("utf-8")


def _parse_number(cell: str) -> float | None:
    try:
        v = float(cell)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def _numeric_sort_key(cat: str):
    v = _parse_number(cat)
    return (0, v, cat) if v is not None else (1, 0.0, cat)


def ingest_csv(
    data: bytes | str,
    hints: Mapping[str, Kind | str] | None = None,
    category_orders: Mapping[str, Sequence[str]] | None = None,
) -> Dataset:
    """Parse CSV bytes (first row = header) into a typed Dataset.

    A column becomes continuous when every non-empty cell parses as a finite
    number and it has more than CATEGORICAL_MAX_DISTINCT distinct values;
    `hints` overrides the kind per column. Rows with empty cells are dropped
    (counted in Dataset.dropped_rows). Ragged rows are a structural error.
    """
    if isinstance(data, bytes):
        text = data.decode("utf-8-sig")
    else:
        text = data
    if not text.strip():
        raise EmptyDatasetError("input is empty")

    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyDatasetError("input is empty") from None
    header = [h.strip() for h in header]
    if len(set(header)) != len(header):
        raise DataFormatError("duplicate column names in header")
    ncols = len(header)

    rows: list[list[str]] = []
    dropped = 0
    for i, row in enumerate(reader):
        if not row:                       # blank line
            continue
        if len(row) != ncols:
            raise DataFormatError(
                f"row {i + 2} has {len(row)} cells, expected {ncols}"
            )
        if any(cell == "" for cell in row):
            dropped += 1
            continue
        rows.append(row)
    if not rows:
        raise EmptyDatasetError(
            "no usable records" + (f" ({dropped} dropped for missing cells)" if dropped else "")
        )

    hint_kinds: dict[str, Kind] = {}
    for name, k in (hints or {}).items():
        if name not in header:
            raise UnknownDimensionError(name, f"hint names unknown column {name!r}")
        hint_kinds[name] = Kind(k)

    dimensions: list[Dimension] = []
    parsed_cols: list[list] = []
    for c, name in enumerate(header):
        cells = [row[c] for row in rows]
        numbers = [_parse_number(cell) for cell in cells]
        all_numeric = all(v is not None for v in numbers)
        distinct = set(cells)

        kind = hint_kinds.get(name)
        if kind is None:
            kind = (
                Kind.CONTINUOUS
                if all_numeric and len(distinct) > CATEGORICAL_MAX_DISTINCT
                else Kind.CATEGORICAL
            )
        if kind is Kind.CONTINUOUS:
            if not all_numeric:
                raise DataFormatError(f"column {name!r} hinted continuous but has non-numeric cells")
            dimensions.append(Dimension(name, Kind.CONTINUOUS, range=(min(numbers), max(numbers))))
            parsed_cols.append(numbers)
        else:
            override = (category_orders or {}).get(name)
            if override is not None:
                missing = distinct - set(override)
                if missing:
                    raise ParameterError(
                        f"category order for {name!r} misses values {sorted(missing)!r}"
                    )
                categories = tuple(v for v in override if v in distinct)
            elif all_numeric:
                categories = tuple(sorted(distinct, key=_numeric_sort_key))
            else:
                seen: dict[str, None] = {}
                for cell in cells:
                    seen.setdefault(cell)
                categories = tuple(seen)
            dimensions.append(Dimension(name, Kind.CATEGORICAL, categories=categories))
            parsed_cols.append(cells)

    records = tuple(zip(*parsed_cols))
    return Dataset(
        dimensions=tuple(dimensions),
        records=records,
        point_ids=tuple(range(len(records))),
        dropped_rows=dropped,
    )


@dataclass(frozen=True)
class FixedCount:
    """Bin into k equal-width bins spanning the dimension range."""

    k: int


@dataclass(frozen=True)
class FixedWidth:
    """Bin into ceil(range / w) bins of width w starting at the range minimum."""

    w: float


def _fmt_edge(v: float, integral: bool) -> str:
    if integral:
        return str(int(round(v)))
    s = f"{v:.10g}"
    if "." not in s and "e" not in s and "E" not in s:
        s += ".0"
    return s


def _bin_labels(edges: Sequence[float], integral: bool) -> tuple[str, ...]:
    labels = []
    n = len(edges) - 1
    for i in range(n):
        lo, hi = _fmt_edge(edges[i], integral), _fmt_edge(edges[i + 1], integral)
        close = "]" if i == n - 1 else ")"
        labels.append(f"[{lo}, {hi}{close}")
    return tuple(labels)


@dataclass(frozen=True)
class Quantizer:
    """Maps a continuous dimension onto ordered bins.

    bin_edges has len(labels) + 1 entries; interior bins are [lo, hi) and the
    final bin is closed. A constant-valued dimension degenerates to the single
    bin [v, v].
    """

    source: Dimension
    bin_edges: tuple[float, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.bin_edges) != len(self.labels) + 1 or not self.labels:
            raise ParameterError("bin_edges must bound labels")
        degenerate = len(self.labels) == 1 and self.bin_edges[0] == self.bin_edges[-1]
        if not degenerate:
            for a, b in zip(self.bin_edges, self.bin_edges[1:]):
                if not a < b:
                    raise ParameterError("bin_edges must be strictly ascending")

    @property
    def bin_count(self) -> int:
        return len(self.labels)

    def classify(self, value: float) -> int:
        """Total over the real line: values outside the range clamp to the
        nearest bin, the final bin is closed."""
        n = self.bin_count
        if n == 1:
            return 0
        idx = bisect_right(self.bin_edges, value, 1, n) - 1
        return idx

    def classify_many(self, values: Iterable[float]):
        """Vectorized classify; returns an int ndarray."""
        import numpy as np

        arr = np.asarray(list(values) if not isinstance(values, (list, tuple, np.ndarray)) else values, dtype=np.float64)
        n = self.bin_count
        if n == 1:
            return np.zeros(arr.shape, dtype=np.intp)
        return np.searchsorted(np.asarray(self.bin_edges[1:n]), arr, side="right")


def make_quantizer(dim: Dimension, edges: Sequence[float]) -> Quantizer:
    """Quantizer over explicit ascending edges, labels formatted as usual."""
    lo, hi = dim.range
    integral = (
        float(lo).is_integer()
        and float(hi).is_integer()
        and all(float(e).is_integer() for e in edges)
    )
    return Quantizer(dim, tuple(edges), _bin_labels(edges, integral))


def quantize(dim: Dimension, policy: FixedCount | FixedWidth) -> Quantizer:
    """Build a Quantizer for a continuous dimension under the given policy."""
    if dim.kind is not Kind.CONTINUOUS:
        raise ParameterError(f"dimension {dim.name!r} is not continuous")
    lo, hi = dim.range
    integral = float(lo).is_integer() and float(hi).is_integer()

    if lo == hi:
        edges = (lo, hi)
        return Quantizer(dim, edges, _bin_labels(edges, integral))

    if isinstance(policy, FixedCount):
        if policy.k < 1:
            raise ParameterError("bin count must be >= 1")
        k = policy.k
        edges = [lo + (hi - lo) * i / k for i in range(k)]
        edges.append(hi)
    elif isinstance(policy, FixedWidth):
        if policy.w <= 0:
            raise ParameterError("bin width must be > 0")
        k = max(1, math.ceil((hi - lo) / policy.w))
        edges = [lo + policy.w * i for i in range(k + 1)]
    else:
        raise ParameterError(f"unknown binning policy {policy!r}")

    integral = integral and all(float(e).is_integer() for e in edges)
    return Quantizer(dim, tuple(edges), _bin_labels(edges, integral))
