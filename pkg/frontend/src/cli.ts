#!/usr/bin/env node
/**
 * Batch figure renderer for the engine's CSV exports.
 *
 *   tlri-plots --kind tlri_heatmap --results out/results.csv --out-dir figs
 *   tlri-plots --kind dist_panel   --results out/results.csv --traces-dir out --out-dir figs
 *   tlri-plots --kind sweep_curve  --traces-dir out --out-dir figs
 *
 * dist_panel renders one figure per traces_<id>.csv that matches a results
 * row; sweep_curve renders every sweep_*.csv found in --traces-dir.
 */

import { existsSync, mkdirSync, readdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { parseArgs } from "node:util";
import { readResults, readSweep, readTraces, type ResultRow } from "./csv.js";
import { renderDistPanel } from "./distPanel.js";
import { renderHeatmap } from "./heatmap.js";
import { renderSweepCurve } from "./sweepCurve.js";

const KINDS = ["dist_panel", "tlri_heatmap", "sweep_curve"] as const;
type Kind = (typeof KINDS)[number];

export function traceFileId(row: ResultRow): string {
  // mirrors the engine's file naming: alpha in shortest form, '.' -> 'p'
  const alpha = String(Number(row.alpha)).replace(/\./g, "p");
  return `${row.scheme}_${row.env}_${row.leak}_a${alpha}`;
}

export interface CliOptions {
  kind: Kind;
  results?: string;
  tracesDir?: string;
  outDir: string;
}

export function runCli(options: CliOptions): string[] {
  mkdirSync(options.outDir, { recursive: true });
  const written: string[] = [];
  const emit = (name: string, svg: string) => {
    const path = join(options.outDir, name);
    writeFileSync(path, svg);
    written.push(path);
  };

  if (options.kind === "tlri_heatmap") {
    if (!options.results) throw new Error("tlri_heatmap requires --results");
    emit("tlri_heatmap.svg", renderHeatmap(readResults(options.results)));
    return written;
  }

  if (options.kind === "dist_panel") {
    if (!options.results || !options.tracesDir) {
      throw new Error("dist_panel requires --results and --traces-dir");
    }
    for (const row of readResults(options.results)) {
      const id = traceFileId(row);
      const tracesPath = join(options.tracesDir, `traces_${id}.csv`);
      if (!existsSync(tracesPath)) continue;
      emit(`dist_panel_${id}.svg`, renderDistPanel(readTraces(tracesPath), row, tracesPath));
    }
    if (written.length === 0) {
      throw new Error(`no traces_*.csv in ${options.tracesDir} match ${options.results}`);
    }
    return written;
  }

  if (!options.tracesDir) throw new Error("sweep_curve requires --traces-dir");
  const sweeps = readdirSync(options.tracesDir)
    .filter((name) => name.startsWith("sweep_") && name.endsWith(".csv"))
    .sort();
  if (sweeps.length === 0) {
    throw new Error(`no sweep_*.csv files in ${options.tracesDir}`);
  }
  for (const name of sweeps) {
    const id = name.slice("sweep_".length, -".csv".length);
    const rows = readSweep(join(options.tracesDir, name));
    emit(`sweep_curve_${id}.svg`, renderSweepCurve(rows, id));
  }
  return written;
}

export function main(argv: string[]): number {
  const { values } = parseArgs({
    args: argv,
    options: {
      kind: { type: "string" },
      results: { type: "string" },
      "traces-dir": { type: "string" },
      "out-dir": { type: "string" },
    },
  });
  const kind = values.kind as Kind | undefined;
  if (!kind || !KINDS.includes(kind)) {
    console.error(`--kind must be one of: ${KINDS.join(", ")}`);
    return 1;
  }
  if (!values["out-dir"]) {
    console.error("--out-dir is required");
    return 1;
  }
  try {
    const written = runCli({
      kind,
      results: values.results,
      tracesDir: values["traces-dir"],
      outDir: values["out-dir"],
    });
    for (const path of written) console.log(path);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

if (process.argv[1] && import.meta.url.endsWith(process.argv[1].split("/").pop()!)) {
  process.exit(main(process.argv.slice(2)));
}
