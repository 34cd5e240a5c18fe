/**
 * Matrix-wide TLRI heatmap: one row per (scheme, environment), one column
 * per (leak model, alpha), cell color = TLRI on a color scale anchored at
 * 0 and 1 regardless of the data range.
 */

import { scaleSequential } from "d3-scale";
import { interpolateViridis } from "d3-scale-chromatic";
import type { ResultRow } from "./csv.js";
import { svgDocument, tag, text } from "./svg.js";

const CELL_W = 86;
const CELL_H = 34;
const LEFT = 130;
const TOP = 70;

export const tlriColor = scaleSequential(interpolateViridis).domain([0, 1]);

function uniq<T>(items: T[], key: (t: T) => string): T[] {
  const seen = new Set<string>();
  return items.filter((item) => {
    const k = key(item);
    if (seen.has(k)) return false;
    seen.add(k);
    return true;
  });
}

export function renderHeatmap(rows: ResultRow[]): string {
  if (rows.length === 0) throw new Error("results file has no rows");
  const rowKeys = uniq(rows, (r) => `${r.scheme}|${r.env}`).map(
    (r) => ({ scheme: r.scheme, env: r.env }),
  );
  const colKeys = uniq(rows, (r) => `${r.leak}|${r.alpha}`).map(
    (r) => ({ leak: r.leak, alpha: r.alpha }),
  );
  const byKey = new Map(rows.map((r) => [`${r.scheme}|${r.env}|${r.leak}|${r.alpha}`, r]));

  const width = LEFT + colKeys.length * CELL_W + 20;
  const height = TOP + rowKeys.length * CELL_H + 20;
  let body = text(LEFT, 26, "TLRI by scenario", { "font-size": 16, class: "title" });
  colKeys.forEach((col, j) => {
    const label = col.alpha === "0.0" ? col.leak : `${col.leak} α=${col.alpha}`;
    body += text(LEFT + j * CELL_W + CELL_W / 2, TOP - 10, label, {
      "text-anchor": "middle", "font-size": 10,
    });
  });
  rowKeys.forEach((rk, i) => {
    body += text(LEFT - 8, TOP + i * CELL_H + CELL_H / 2 + 4, `${rk.scheme}/${rk.env}`, {
      "text-anchor": "end", "font-size": 11,
    });
    colKeys.forEach((col, j) => {
      const cell = byKey.get(`${rk.scheme}|${rk.env}|${col.leak}|${col.alpha}`);
      if (!cell) return;
      const color = tlriColor(cell.tlriNum);
      body += tag("rect", {
        x: LEFT + j * CELL_W,
        y: TOP + i * CELL_H,
        width: CELL_W - 2,
        height: CELL_H - 2,
        fill: color,
        class: "cell",
      });
      body += text(
        LEFT + j * CELL_W + (CELL_W - 2) / 2,
        TOP + i * CELL_H + CELL_H / 2 + 3,
        cell.tlriNum.toFixed(3),
        {
          "text-anchor": "middle",
          "font-size": 10,
          fill: cell.tlriNum > 0.6 ? "#000" : "#fff",
          class: "cell-label",
        },
      );
    });
  });
  return svgDocument(width, height, body);
}
