/**
 * Stability curve: TLRI and KS-D versus prefix size on a log x axis, one
 * marker per grid point. The final-TLRI annotation echoes the file cell.
 */

import { scaleLinear, scaleLog } from "d3-scale";
import type { SweepRow } from "./csv.js";
import { polyline, svgDocument, tag, text } from "./svg.js";

const WIDTH = 640;
const HEIGHT = 360;
const LEFT = 60;
const TOP = 50;
const PLOT_W = WIDTH - LEFT - 40;
const PLOT_H = HEIGHT - TOP - 60;

const SERIES: { field: "tlriNum" | "ksNum"; label: string; color: string }[] = [
  { field: "tlriNum", label: "TLRI", color: "#1f77b4" },
  { field: "ksNum", label: "KS-D", color: "#d62728" },
];

export function renderSweepCurve(rows: SweepRow[], title: string): string {
  const plotted = rows.filter((r) => !r.skipped);
  if (plotted.length === 0) throw new Error("sweep has no usable points");
  const x = scaleLog(
    [plotted[0].prefix_n, plotted[plotted.length - 1].prefix_n],
    [LEFT, LEFT + PLOT_W],
  );
  const y = scaleLinear([0, 1], [TOP + PLOT_H, TOP]);

  let body = text(LEFT, 24, title, { "font-size": 15, class: "title" });
  const final = plotted[plotted.length - 1];
  body += text(LEFT, 40, `final TLRI=${final.tlri}`, {
    "font-size": 11, class: "annotation",
  });
  body += tag("rect", {
    x: LEFT, y: TOP, width: PLOT_W, height: PLOT_H,
    fill: "none", stroke: "#333", "stroke-width": 1,
  });
  for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
    body += text(LEFT - 6, y(tick) + 4, tick.toString(), {
      "text-anchor": "end", "font-size": 10,
    });
  }
  for (const r of plotted) {
    body += text(x(r.prefix_n), TOP + PLOT_H + 16, String(r.prefix_n), {
      "text-anchor": "middle", "font-size": 9,
    });
  }
  body += text(LEFT + PLOT_W / 2, HEIGHT - 14, "prefix size N (log scale)", {
    "text-anchor": "middle", "font-size": 11,
  });

  SERIES.forEach((series, s) => {
    const points = plotted.map(
      (r) => [x(r.prefix_n), y(r[series.field])] as [number, number],
    );
    body += polyline(points, {
      stroke: series.color, "stroke-width": 1.5, class: `series series-${series.label}`,
    });
    for (const [px, py] of points) {
      body += tag("circle", {
        cx: px, cy: py, r: 3, fill: series.color,
        class: `marker marker-${series.label}`,
      });
    }
    body += text(LEFT + PLOT_W - 4, TOP + 16 + 14 * s, series.label, {
      "text-anchor": "end", "font-size": 11, fill: series.color,
    });
  });
  return svgDocument(WIDTH, HEIGHT, body);
}
