// Control state and its canonical mapping to service URLs. Idempotence
// matters: the same state must always produce the same URL so responses are
// cacheable and re-issuing the current state refetches identical geometry.

export type PlotMode = "auto" | "absolute" | "normalized" | "streamgraph";
export type FoldStateName = "min" | "max";

export interface Fold {
  axis: "x" | "y";
  value: string;
  state: FoldStateName;
}

export interface Controls {
  datasetId: string;
  x: string | null;
  y: string | null;
  color: string | null;
  mode: PlotMode;
  width: number;
  height: number;
  folds: Fold[];
}

export function defaultControls(datasetId: string): Controls {
  return {
    datasetId,
    x: null,
    y: null,
    color: null,
    mode: "auto",
    width: 800,
    height: 600,
    folds: [],
  };
}

// Percent-encode everything outside the RFC 3986 unreserved set, so the URL
// for a given state is byte-stable across clients.
export function enc(value: string): string {
  let out = "";
  for (const ch of value) {
    if (/[A-Za-z0-9_.~-]/.test(ch)) {
      out += ch;
    } else {
      for (const byte of new TextEncoder().encode(ch)) {
        out += "%" + byte.toString(16).toUpperCase().padStart(2, "0");
      }
    }
  }
  return out;
}

export function foldArg(f: Fold): string {
  return `${f.axis}=${f.value}:${f.state}`;
}

export function layoutUrl(c: Controls): string {
  const parts: string[] = [];
  if (c.x) parts.push(`x=${enc(c.x)}`);
  if (c.y) parts.push(`y=${enc(c.y)}`);
  if (c.color) parts.push(`color=${enc(c.color)}`);
  parts.push(`mode=${c.mode}`);
  parts.push(`width=${c.width}`);
  parts.push(`height=${c.height}`);
  for (const f of c.folds) {
    parts.push(`fold=${enc(foldArg(f))}`);
  }
  return `/datasets/${c.datasetId}/layout?${parts.join("&")}`;
}

// Clicking a bracket toggles that value between open and minimized; clicking
// a maximized value restores it too.
export function toggleFold(folds: Fold[], axis: "x" | "y", value: string): Fold[] {
  const existing = folds.find((f) => f.axis === axis && f.value === value);
  const rest = folds.filter((f) => !(f.axis === axis && f.value === value));
  if (existing) return rest;
  return [...rest, { axis, value, state: "min" }];
}

export function setMaximized(folds: Fold[], axis: "x" | "y", value: string): Fold[] {
  const rest = folds.filter((f) => !(f.axis === axis && f.state === "max"));
  return [...rest.filter((f) => !(f.axis === axis && f.value === value)), { axis, value, state: "max" }];
}

export function swapAxes(c: Controls): Controls {
  return {
    ...c,
    x: c.y,
    y: c.x,
    folds: c.folds.map((f) => ({ ...f, axis: f.axis === "x" ? "y" : "x" as const })),
  };
}

export interface LensControls {
  x: string;
  y: string;
  markSize: number;
  plot: { x: number; y: number; w: number; h: number };
  region: { x: number; y: number; w: number; h: number };
  mode: "standard" | "histogram" | "pie";
  groupDim: string;
}

export function lensBody(c: LensControls): object {
  return {
    x: c.x,
    y: c.y,
    mark_size: c.markSize,
    plot: c.plot,
    region: c.region,
    mode: c.mode,
    group_dim: c.groupDim,
  };
}
