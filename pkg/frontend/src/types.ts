// Geometry wire format, pinned by ../src/gatherplot/geometry.schema.json
// (pixels, y-down, schema_version 1). The UI renders these verbatim and
// never computes layout itself.

export interface RectJson {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface MarkJson {
  id: number;
  x: number;
  y: number;
  w: number;
  h: number;
  r: number;
  color: string;
}

export interface GroupJson {
  cell: { x: string; y: string };
  box: RectJson;
  grid: { cols: number; rows: number };
  folded: boolean;
  marks: MarkJson[];
}

export interface TickJson {
  axis: "x" | "y";
  lo: number;
  hi: number;
  label: string;
  arm_length: number;
  inset: number;
}

export interface LegendEntryJson {
  key: string;
  index: number;
}

export interface LayoutDocument {
  schema_version: 1;
  units: "px";
  y_down: true;
  region: RectJson;
  mode_used: "absolute" | "normalized" | "streamgraph";
  mark_count: number;
  groups: GroupJson[];
  ticks: TickJson[];
  legend: LegendEntryJson[];
  warnings: string[];
}

export interface WedgeJson {
  id: number;
  r0: number;
  r1: number;
  a0: number;
  a1: number;
  color: string;
}

export interface SectorJson {
  key: string;
  angle_start: number;
  angle_end: number;
  wedges: WedgeJson[];
}

export interface LensDocument {
  schema_version: 1;
  units: "px";
  y_down: true;
  lens: {
    mode: "standard" | "histogram" | "pie";
    region: RectJson;
    group_dim: string;
    captured: number[];
    mark_count: number;
    groups?: GroupJson[];
    sectors?: SectorJson[];
    center?: { x: number; y: number };
    radius?: number;
  };
  suppressed: number[];
}

export interface DimensionJson {
  name: string;
  kind: "categorical" | "continuous";
  categories: string[] | null;
  range: [number, number] | null;
}

export interface DatasetHandle {
  id: string;
  name: string;
  schema_version: number;
  row_count: number;
  dropped_rows: number;
  dimensions: DimensionJson[];
}
