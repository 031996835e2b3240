// Render geometry documents to SVG markup. The service's JSON is the single
// source of truth: every mark in the document becomes exactly one rect (or
// wedge path), and the badge is derived from what was actually rendered so
// tests can pin it against the document's mark_count.

import { LayoutDocument, LensDocument } from "./types.js";

export const PALETTE = [
  "#3f90da",
  "#ffa90e",
  "#bd1f01",
  "#94a4a2",
  "#832db6",
  "#a96b59",
  "#e76300",
  "#b9ac70",
  "#717581",
  "#92dadd",
];

const NEUTRAL = "#4878a8";
const TICK_OFFSET = 8;

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function n(v: number): string {
  return Number.isInteger(v) ? String(v) : String(Math.round(v * 1000) / 1000);
}

export function colorFor(key: string, legend: Map<string, number>): string {
  const idx = legend.get(key);
  if (key === "" || idx === undefined) return NEUTRAL;
  return PALETTE[idx % PALETTE.length];
}

export function renderLayoutSvg(doc: LayoutDocument): string {
  const legend = new Map(doc.legend.map((e) => [e.key, e.index]));
  const r = doc.region;
  const padLeft = doc.ticks.some((t) => t.axis === "y") ? 40 : 8;
  const padBottom = doc.ticks.some((t) => t.axis === "x") ? 40 : 8;
  const minX = r.x - padLeft;
  const minY = r.y - 8;
  const width = r.w + padLeft + 8;
  const height = r.h + padBottom + 16;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="${n(minX)} ${n(minY)} ${n(width)} ${n(height)}" data-mode="${doc.mode_used}">`,
  ];

  parts.push(`<g data-layer="marks">`);
  for (const g of doc.groups) {
    for (const m of g.marks) {
      parts.push(
        `<rect data-point-id="${m.id}" x="${n(m.x)}" y="${n(m.y)}" width="${n(m.w)}" ` +
          `height="${n(m.h)}" rx="${n(m.r)}" fill="${colorFor(m.color, legend)}">` +
          `<title>#${m.id}${m.color ? " " + esc(m.color) : ""}</title></rect>`,
      );
    }
  }
  parts.push(`</g>`);

  parts.push(`<g data-layer="ticks" fill="none" stroke="#444">`);
  for (const t of doc.ticks) {
    const arm = t.arm_length;
    if (t.axis === "x") {
      const yb = r.y + r.h + TICK_OFFSET;
      parts.push(
        `<path data-tick-axis="x" data-tick-value="${esc(t.label)}" ` +
          `d="M ${n(t.lo)} ${n(yb - arm)} L ${n(t.lo)} ${n(yb)} L ${n(t.hi)} ${n(yb)} L ${n(t.hi)} ${n(yb - arm)}"/>`,
      );
    } else {
      const xb = r.x - TICK_OFFSET;
      parts.push(
        `<path data-tick-axis="y" data-tick-value="${esc(t.label)}" ` +
          `d="M ${n(xb + arm)} ${n(t.lo)} L ${n(xb)} ${n(t.lo)} L ${n(xb)} ${n(t.hi)} L ${n(xb + arm)} ${n(t.hi)}"/>`,
      );
    }
  }
  parts.push(`</g>`);

  parts.push(`<g data-layer="tick-labels" font-size="11" fill="#222">`);
  for (const t of doc.ticks) {
    const mid = (t.lo + t.hi) / 2;
    if (t.axis === "x") {
      const y = r.y + r.h + TICK_OFFSET + 14;
      parts.push(
        `<text data-tick-axis="x" data-tick-value="${esc(t.label)}" x="${n(mid)}" y="${n(y)}" ` +
          `text-anchor="middle">${esc(t.label)}</text>`,
      );
    } else {
      const x = r.x - TICK_OFFSET - 6;
      parts.push(
        `<text data-tick-axis="y" data-tick-value="${esc(t.label)}" x="${n(x)}" y="${n(mid)}" ` +
          `text-anchor="middle" transform="rotate(-90 ${n(x)} ${n(mid)})">${esc(t.label)}</text>`,
      );
    }
  }
  parts.push(`</g>`);
  parts.push(`</svg>`);
  return parts.join("");
}

function wedgePath(cx: number, cy: number, s: { r0: number; r1: number; a0: number; a1: number }): string {
  // angles are degrees clockwise from 12 o'clock (y-down screen space)
  const rad = (deg: number) => ((deg - 90) * Math.PI) / 180;
  const px = (radius: number, deg: number) => [cx + radius * Math.cos(rad(deg)), cy + radius * Math.sin(rad(deg))];
  const [x0o, y0o] = px(s.r1, s.a0);
  const [x1o, y1o] = px(s.r1, s.a1);
  const [x1i, y1i] = px(s.r0, s.a1);
  const [x0i, y0i] = px(s.r0, s.a0);
  const large = s.a1 - s.a0 > 180 ? 1 : 0;
  return (
    `M ${n(x0o)} ${n(y0o)} A ${n(s.r1)} ${n(s.r1)} 0 ${large} 1 ${n(x1o)} ${n(y1o)} ` +
    `L ${n(x1i)} ${n(y1i)} A ${n(s.r0)} ${n(s.r0)} 0 ${large} 0 ${n(x0i)} ${n(y0i)} Z`
  );
}

export function renderLensSvg(doc: LensDocument, legend: Map<string, number>): string {
  const lens = doc.lens;
  const r = lens.region;
  const parts: string[] = [
    `<g data-layer="lens" data-lens-mode="${lens.mode}">`,
    `<rect data-lens-frame="1" x="${n(r.x)}" y="${n(r.y)}" width="${n(r.w)}" height="${n(r.h)}" ` +
      `fill="#ffffff" fill-opacity="0.92" stroke="#333" stroke-dasharray="4 2"/>`,
  ];
  if (lens.mode === "pie" && lens.sectors && lens.center) {
    for (const sector of lens.sectors) {
      for (const w of sector.wedges) {
        parts.push(
          `<path data-point-id="${w.id}" d="${wedgePath(lens.center.x, lens.center.y, w)}" ` +
            `fill="${colorFor(w.color, legend)}"><title>#${w.id} ${esc(w.color)}</title></path>`,
        );
      }
    }
  } else if (lens.groups) {
    for (const g of lens.groups) {
      for (const m of g.marks) {
        parts.push(
          `<rect data-point-id="${m.id}" x="${n(m.x)}" y="${n(m.y)}" width="${n(m.w)}" ` +
            `height="${n(m.h)}" rx="${n(m.r)}" fill="${colorFor(m.color, legend)}">` +
            `<title>#${m.id} ${esc(m.color)}</title></rect>`,
        );
      }
    }
  }
  parts.push(`</g>`);
  return parts.join("");
}

export function countRenderedMarks(svg: string): number {
  return (svg.match(/data-point-id="/g) ?? []).length;
}

export function badgeText(svg: string): string {
  return `${countRenderedMarks(svg)} marks`;
}
