/**
 * Three-panel per-scenario figure: histogram+KDE, ECDF, violin.
 * Classes are color-separated; the annotation echoes the scenario id and
 * the TLRI / KS-D cells of the results file verbatim.
 */

import { scaleLinear } from "d3-scale";
import { ecdf, histogram, kde, linspace } from "./display.js";
import type { ResultRow, TraceRow } from "./csv.js";
import { CLASS_COLORS, polygon, polyline, svgDocument, tag, text } from "./svg.js";

const WIDTH = 960;
const HEIGHT = 320;
const PANEL_W = 280;
const PANEL_H = 230;
const MARGIN_L = 30;
const PANEL_TOP = 60;
const GAP = 35;
const HIST_BINS = 40;
const KDE_POINTS = 120;

export function splitClasses(traces: TraceRow[], source: string): [number[], number[]] {
  const t0 = traces.filter((t) => t.secret === 0).map((t) => t.timing);
  const t1 = traces.filter((t) => t.secret === 1).map((t) => t.timing);
  if (t0.length === 0 || t1.length === 0) {
    throw new Error(`${source}: both secret classes must be present (n0=${t0.length}, n1=${t1.length})`);
  }
  return [t0, t1];
}

function panelFrame(x0: number, title: string): string {
  return (
    tag("rect", {
      x: x0, y: PANEL_TOP, width: PANEL_W, height: PANEL_H,
      fill: "none", stroke: "#333", "stroke-width": 1,
    }) + text(x0 + PANEL_W / 2, PANEL_TOP - 8, title, {
      "text-anchor": "middle", "font-size": 13,
    })
  );
}

function histPanel(x0: number, t0: number[], t1: number[], lo: number, hi: number): string {
  const h0 = histogram(t0, lo, hi, HIST_BINS);
  const h1 = histogram(t1, lo, hi, HIST_BINS);
  const grid = linspace(lo, hi, KDE_POINTS);
  const k0 = kde(t0, grid);
  const k1 = kde(t1, grid);
  const yMax = Math.max(...h0.density, ...h1.density, ...k0, ...k1) * 1.05;
  const x = scaleLinear([lo, hi], [x0, x0 + PANEL_W]);
  const y = scaleLinear([0, yMax], [PANEL_TOP + PANEL_H, PANEL_TOP]);

  let body = panelFrame(x0, "histogram + KDE");
  [h0, h1].forEach((h, cls) => {
    for (let b = 0; b < HIST_BINS; b++) {
      if (h.density[b] === 0) continue;
      body += tag("rect", {
        x: x(h.edges[b]),
        y: y(h.density[b]),
        width: x(h.edges[b + 1]) - x(h.edges[b]),
        height: y(0) - y(h.density[b]),
        fill: CLASS_COLORS[cls],
        "fill-opacity": 0.35,
        class: `hist hist-c${cls}`,
      });
    }
  });
  [k0, k1].forEach((k, cls) => {
    body += polyline(
      grid.map((g, i) => [x(g), y(k[i])] as [number, number]),
      { stroke: CLASS_COLORS[cls], "stroke-width": 1.5, class: `kde kde-c${cls}` },
    );
  });
  return body;
}

function ecdfPanel(x0: number, t0: number[], t1: number[], lo: number, hi: number): string {
  const x = scaleLinear([lo, hi], [x0, x0 + PANEL_W]);
  const y = scaleLinear([0, 1], [PANEL_TOP + PANEL_H, PANEL_TOP]);
  let body = panelFrame(x0, "ECDF");
  [t0, t1].forEach((sample, cls) => {
    const steps: [number, number][] = [[x(lo), y(0)]];
    for (const [value, q] of ecdf(sample)) {
      const px = x(value);
      steps.push([px, steps[steps.length - 1][1]]);
      steps.push([px, y(q)]);
    }
    steps.push([x(hi), y(1)]);
    body += polyline(steps, {
      stroke: CLASS_COLORS[cls], "stroke-width": 1.5, class: `ecdf ecdf-c${cls}`,
    });
  });
  return body;
}

function violinPanel(x0: number, t0: number[], t1: number[], lo: number, hi: number): string {
  const y = scaleLinear([lo, hi], [PANEL_TOP + PANEL_H, PANEL_TOP]);
  const grid = linspace(lo, hi, KDE_POINTS);
  const halfWidth = PANEL_W / 5;
  let body = panelFrame(x0, "violin");
  [t0, t1].forEach((sample, cls) => {
    const density = kde(sample, grid);
    const dMax = Math.max(...density);
    const center = x0 + ((cls + 1) * PANEL_W) / 3;
    const scaleOut = dMax > 0 ? halfWidth / dMax : 0;
    const right = grid.map(
      (g, i) => [center + density[i] * scaleOut, y(g)] as [number, number],
    );
    const left = grid
      .map((g, i) => [center - density[i] * scaleOut, y(g)] as [number, number])
      .reverse();
    body += polygon([...right, ...left], {
      fill: CLASS_COLORS[cls],
      "fill-opacity": 0.45,
      stroke: CLASS_COLORS[cls],
      class: `violin violin-c${cls}`,
    });
    body += text(center, PANEL_TOP + PANEL_H + 16, `class ${cls}`, {
      "text-anchor": "middle", "font-size": 11, fill: CLASS_COLORS[cls],
    });
  });
  return body;
}

export function renderDistPanel(traces: TraceRow[], row: ResultRow, source: string): string {
  const [t0, t1] = splitClasses(traces, source);
  const all = traces.map((t) => t.timing);
  const lo = Math.min(...all);
  const hi = Math.max(...all);
  if (hi <= lo) throw new Error(`${source}: degenerate timing range`);

  const title = `${row.scheme}/${row.env}/${row.leak}/α=${row.alpha}`;
  // annotation cells are echoed verbatim from results.csv
  const annotation = `TLRI=${row.tlri}  KS-D=${row.ks_d}`;
  let body = text(MARGIN_L, 24, title, { "font-size": 16, class: "title" });
  body += text(MARGIN_L, 42, annotation, { "font-size": 12, class: "annotation" });
  const panelX = (i: number) => MARGIN_L + i * (PANEL_W + GAP);
  body += histPanel(panelX(0), t0, t1, lo, hi);
  body += ecdfPanel(panelX(1), t0, t1, lo, hi);
  body += violinPanel(panelX(2), t0, t1, lo, hi);
  return svgDocument(WIDTH, HEIGHT, body);
}
