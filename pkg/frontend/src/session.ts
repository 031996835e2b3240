// UI core sessions: orchestrate state -> request -> verbatim render. Pure of
// DOM concerns so the scripted-interaction tests drive exactly this code.

import { ServiceClient } from "./api.js";
import { badgeText, renderLayoutSvg, renderLensSvg } from "./render.js";
import { Controls, LensControls, setMaximized, swapAxes, toggleFold } from "./state.js";
import { LayoutDocument, LensDocument } from "./types.js";

export class PlotSession {
  doc: LayoutDocument | null = null;
  svg = "";
  badge = "";
  error: string | null = null;
  private generation = 0;

  constructor(
    private client: ServiceClient,
    public controls: Controls,
    private onChange: () => void = () => {},
  ) {}

  /** Fetch geometry for the current controls; stale responses (superseded by
   * a newer refresh) are dropped. */
  async refresh(): Promise<LayoutDocument | null> {
    const gen = ++this.generation;
    try {
      const doc = await this.client.getLayout(this.controls);
      if (gen !== this.generation) return null; // superseded in flight
      this.doc = doc;
      this.svg = renderLayoutSvg(doc);
      this.badge = badgeText(this.svg);
      this.error = null;
    } catch (e) {
      if (gen !== this.generation) return null;
      this.error = e instanceof Error ? e.message : String(e);
    }
    this.onChange();
    return this.doc;
  }

  async setControls(next: Controls) {
    this.controls = next;
    return this.refresh();
  }

  async setMode(mode: Controls["mode"]) {
    return this.setControls({ ...this.controls, mode });
  }

  async setAxes(x: string | null, y: string | null, color?: string | null) {
    return this.setControls({
      ...this.controls,
      x,
      y,
      color: color === undefined ? this.controls.color : color,
      folds: [],
    });
  }

  /** Bracket click: toggle a minimize fold; click again to restore. */
  async clickBracket(axis: "x" | "y", value: string) {
    return this.setControls({
      ...this.controls,
      folds: toggleFold(this.controls.folds, axis, value),
    });
  }

  async maximize(axis: "x" | "y", value: string) {
    return this.setControls({
      ...this.controls,
      folds: setMaximized(this.controls.folds, axis, value),
    });
  }

  async swap() {
    return this.setControls(swapAxes(this.controls));
  }
}

export class LensSession {
  doc: LensDocument | null = null;
  svg = "";
  error: string | null = null;
  private generation = 0;

  constructor(
    private client: ServiceClient,
    private datasetId: string,
    public controls: LensControls,
    private legend: Map<string, number> = new Map(),
    private onChange: () => void = () => {},
  ) {}

  capturedIds(): number[] {
    return this.doc ? [...this.doc.lens.captured] : [];
  }

  suppressedIds(): Set<number> {
    return new Set(this.doc ? this.doc.suppressed : []);
  }

  async refresh(): Promise<LensDocument | null> {
    const gen = ++this.generation;
    try {
      const doc = await this.client.postLens(this.datasetId, this.controls);
      if (gen !== this.generation) return null;
      this.doc = doc;
      this.svg = renderLensSvg(doc, this.legend);
      this.error = null;
    } catch (e) {
      if (gen !== this.generation) return null;
      this.error = e instanceof Error ? e.message : String(e);
    }
    this.onChange();
    return this.doc;
  }

  async moveTo(region: LensControls["region"]) {
    this.controls = { ...this.controls, region };
    return this.refresh();
  }

  async setMode(mode: LensControls["mode"]) {
    this.controls = { ...this.controls, mode };
    return this.refresh();
  }
}
