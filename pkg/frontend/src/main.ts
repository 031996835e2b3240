// Browser bootstrap: wires the DOM to the session core. Everything the tests
// care about lives in state/render/session/lens; this file is glue.

import { ServiceClient, fetchTransport } from "./api.js";
import { LensDragDriver, Region } from "./lens.js";
import { colorFor } from "./render.js";
import { PlotSession, LensSession } from "./session.js";
import { Controls, defaultControls } from "./state.js";
import { DatasetHandle } from "./types.js";

const $ = <T extends HTMLElement>(sel: string): T => {
  const el = document.querySelector(sel);
  if (!el) throw new Error(`missing element ${sel}`);
  return el as T;
};

let client = new ServiceClient(fetchTransport("http://127.0.0.1:8040"));
let handle: DatasetHandle | null = null;
let plot: PlotSession | null = null;
let lensSession: LensSession | null = null;
let csvText = "";

function categorical(h: DatasetHandle): string[] {
  return h.dimensions.filter((d) => d.kind === "categorical").map((d) => d.name);
}

function continuous(h: DatasetHandle): string[] {
  return h.dimensions.filter((d) => d.kind === "continuous").map((d) => d.name);
}

function fillSelect(sel: HTMLSelectElement, names: string[], allowNone = true) {
  sel.innerHTML = "";
  if (allowNone) sel.append(new Option("(undefined)", ""));
  for (const nm of names) sel.append(new Option(nm, nm));
}

function renderPlot() {
  if (!plot) return;
  $("#plot").innerHTML = plot.svg;
  $("#badge").textContent = plot.badge;
  $("#mode-used").textContent = plot.doc ? `mode: ${plot.doc.mode_used}` : "";
  $("#warnings").textContent = plot.error ?? (plot.doc?.warnings ?? []).join("; ");
  bindPlotEvents();
}

function bindPlotEvents() {
  const svg = $("#plot").querySelector("svg");
  if (!svg) return;
  svg.addEventListener("click", (ev) => {
    const target = ev.target as Element;
    const axis = target.getAttribute("data-tick-axis");
    const value = target.getAttribute("data-tick-value");
    if (!plot || !axis || value === null) return;
    if (ev.shiftKey) void plot.maximize(axis as "x" | "y", value);
    else void plot.clickBracket(axis as "x" | "y", value);
  });
  svg.addEventListener("mousemove", (ev) => {
    const target = ev.target as Element;
    const pid = target.getAttribute("data-point-id");
    $("#readout").textContent = pid !== null ? `point #${pid}` : "";
  });
}

async function loadDataset(name: string, csv: string) {
  csvText = csv;
  handle = await client.postDataset(name, csv);
  $("#dataset-info").textContent = `${handle.name}: ${handle.row_count} rows, ` +
    handle.dimensions.map((d) => `${d.name} (${d.kind})`).join(", ");
  fillSelect($<HTMLSelectElement>("#x-dim"), handle.dimensions.map((d) => d.name));
  fillSelect($<HTMLSelectElement>("#y-dim"), handle.dimensions.map((d) => d.name));
  fillSelect($<HTMLSelectElement>("#color-dim"), categorical(handle));
  fillSelect($<HTMLSelectElement>("#lens-x"), continuous(handle), false);
  fillSelect($<HTMLSelectElement>("#lens-y"), continuous(handle), false);
  fillSelect($<HTMLSelectElement>("#lens-group"), categorical(handle), false);
  plot = new PlotSession(client, defaultControls(handle.id), renderPlot);
  await plot.refresh();
}

function controlsFromUi(): Controls {
  if (!plot || !handle) throw new Error("no dataset loaded");
  const value = (sel: string) => ($<HTMLSelectElement>(sel).value || null);
  return {
    ...plot.controls,
    x: value("#x-dim"),
    y: value("#y-dim"),
    color: value("#color-dim"),
    folds: [],
  };
}

// --- lens view ---------------------------------------------------------------

const PLOT_RECT = { x: 0, y: 0, w: 800, h: 600 };

function drawScatterBase() {
  if (!handle) return;
  // The base scatter uses the same linear mapping the service applies when it
  // captures points (documented in the lens request contract).
  const xName = $<HTMLSelectElement>("#lens-x").value;
  const yName = $<HTMLSelectElement>("#lens-y").value;
  const groupName = $<HTMLSelectElement>("#lens-group").value;
  const rows = csvText.trim().split(/\r?\n/).map((line) => line.split(","));
  const header = rows[0];
  const xi = header.indexOf(xName);
  const yi = header.indexOf(yName);
  const gi = header.indexOf(groupName);
  const xDim = handle.dimensions.find((d) => d.name === xName)!;
  const yDim = handle.dimensions.find((d) => d.name === yName)!;
  const [xLo, xHi] = xDim.range!;
  const [yLo, yHi] = yDim.range!;
  const groups = [...new Set(rows.slice(1).map((r) => r[gi]))].sort();
  const legend = new Map(groups.map((g, i) => [g, i]));
  const marks: string[] = [];
  for (let i = 1; i < rows.length; i++) {
    const row = rows[i];
    const fx = xHi > xLo ? (Number(row[xi]) - xLo) / (xHi - xLo) : 0.5;
    const fy = yHi > yLo ? (Number(row[yi]) - yLo) / (yHi - yLo) : 0.5;
    const cx = PLOT_RECT.x + fx * PLOT_RECT.w;
    const cy = PLOT_RECT.y + PLOT_RECT.h - fy * PLOT_RECT.h;
    marks.push(
      `<rect data-point-id="${i - 1}" x="${cx - 3}" y="${cy - 3}" width="6" height="6" rx="3" ` +
        `fill="${colorFor(row[gi], legend)}" fill-opacity="0.8"/>`,
    );
  }
  $("#lens-plot").innerHTML =
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="-10 -10 820 620">` +
    `<g data-layer="scatter">${marks.join("")}</g><g data-layer="lens-overlay"></g></svg>`;
}

function applyLens() {
  if (!lensSession) return;
  const svg = $("#lens-plot").querySelector("svg");
  if (!svg) return;
  const overlay = svg.querySelector('[data-layer="lens-overlay"]')!;
  overlay.innerHTML = lensSession.svg;
  const suppressed = lensSession.suppressedIds();
  svg.querySelectorAll('[data-layer="scatter"] [data-point-id]').forEach((el) => {
    const pid = Number(el.getAttribute("data-point-id"));
    (el as SVGElement).style.display = suppressed.has(pid) ? "none" : "";
  });
  $("#lens-badge").textContent = `${lensSession.capturedIds().length} captured`;
}

function startLens() {
  if (!handle) return;
  drawScatterBase();
  const region: Region = { x: 180, y: 140, w: 200, h: 200 };
  lensSession = new LensSession(
    client,
    handle.id,
    {
      x: $<HTMLSelectElement>("#lens-x").value,
      y: $<HTMLSelectElement>("#lens-y").value,
      markSize: 6,
      plot: PLOT_RECT,
      region,
      mode: ($<HTMLSelectElement>("#lens-mode").value as "standard" | "histogram" | "pie"),
      groupDim: $<HTMLSelectElement>("#lens-group").value,
    },
    new Map(),
    applyLens,
  );
  void lensSession.refresh();

  const driver = new LensDragDriver((r) => void lensSession?.moveTo(r));
  const plotEl = $("#lens-plot");
  let dragging = false;
  let offset = { dx: 0, dy: 0 };
  plotEl.onpointerdown = (ev) => {
    if (!lensSession) return;
    dragging = true;
    const r = lensSession.controls.region;
    const pt = toPlotCoords(plotEl, ev);
    offset = { dx: pt.x - r.x, dy: pt.y - r.y };
    plotEl.setPointerCapture(ev.pointerId);
  };
  plotEl.onpointermove = (ev) => {
    if (!dragging || !lensSession) return;
    const pt = toPlotCoords(plotEl, ev);
    const r = lensSession.controls.region;
    driver.drag({ ...r, x: pt.x - offset.dx, y: pt.y - offset.dy });
  };
  plotEl.onpointerup = (ev) => {
    if (!dragging || !lensSession) return;
    dragging = false;
    const pt = toPlotCoords(plotEl, ev);
    const r = lensSession.controls.region;
    driver.dragEnd({ ...r, x: pt.x - offset.dx, y: pt.y - offset.dy });
  };
}

function toPlotCoords(container: HTMLElement, ev: PointerEvent) {
  const svg = container.querySelector("svg")!;
  const box = svg.getBoundingClientRect();
  const scaleX = 820 / box.width;
  const scaleY = 620 / box.height;
  return { x: (ev.clientX - box.left) * scaleX - 10, y: (ev.clientY - box.top) * scaleY - 10 };
}

// --- wiring ------------------------------------------------------------------

window.addEventListener("DOMContentLoaded", () => {
  $("#connect").addEventListener("click", () => {
    client = new ServiceClient(fetchTransport($<HTMLInputElement>("#service-url").value));
  });
  $("#csv-file").addEventListener("change", async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    await loadDataset(file.name.replace(/\.csv$/i, ""), await file.text());
  });
  $("#apply-dims").addEventListener("click", () => void plot?.setControls(controlsFromUi()));
  for (const mode of ["auto", "absolute", "normalized", "streamgraph"] as const) {
    $(`#mode-${mode}`).addEventListener("click", () => void plot?.setMode(mode));
  }
  $("#swap-axes").addEventListener("click", () => void plot?.swap());
  $("#lens-start").addEventListener("click", startLens);
  $("#lens-mode").addEventListener("change", () => {
    const mode = $<HTMLSelectElement>("#lens-mode").value as "standard" | "histogram" | "pie";
    void lensSession?.setMode(mode);
  });
});
