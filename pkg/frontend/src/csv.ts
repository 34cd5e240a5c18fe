/**
 * Typed readers for the engine's CSV exports.
 *
 * Numeric fields keep their raw string form alongside the parsed number:
 * annotations must echo the file cell exactly, never a reformatted float.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export interface ResultRow {
  scheme: string;
  env: string;
  leak: string;
  alpha: string;
  n: string;
  tlri: string;
  ks_d: string;
  cliff_delta: string;
  mi_bits: string;
  overlap: string;
  tlriNum: number;
  ksNum: number;
}

export interface TraceRow {
  secret: 0 | 1;
  timing: number;
}

export interface SweepRow {
  prefix_n: number;
  tlri: string;
  ks_d: string;
  tlriNum: number;
  ksNum: number;
  skipped: boolean;
}

function parseRecords(path: string): Record<string, string>[] {
  const text = readFileSync(path, "utf8");
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new Error(
      `${path}: parse failure at row ${first.row ?? "?"}: ${first.message}`,
    );
  }
  return parsed.data;
}

function requireNumber(
  record: Record<string, string>,
  field: string,
  path: string,
  row: number,
): number {
  const raw = record[field];
  const value = Number(raw);
  if (raw === undefined || raw === "" || Number.isNaN(value)) {
    throw new Error(`${path}: row ${row}: bad numeric field '${field}': ${raw}`);
  }
  return value;
}

export function readResults(path: string): ResultRow[] {
  return parseRecords(path).map((record, i) => ({
    scheme: record.scheme ?? "",
    env: record.env ?? "",
    leak: record.leak ?? "",
    alpha: record.alpha ?? "",
    n: record.n ?? "",
    tlri: record.tlri ?? "",
    ks_d: record.ks_d ?? "",
    cliff_delta: record.cliff_delta ?? "",
    mi_bits: record.mi_bits ?? "",
    overlap: record.overlap ?? "",
    tlriNum: requireNumber(record, "tlri", path, i + 2),
    ksNum: requireNumber(record, "ks_d", path, i + 2),
  }));
}

export function readTraces(path: string): TraceRow[] {
  const rows = parseRecords(path).map((record, i) => {
    const secret = requireNumber(record, "secret", path, i + 2);
    if (secret !== 0 && secret !== 1) {
      throw new Error(`${path}: row ${i + 2}: secret label must be 0 or 1`);
    }
    return {
      secret: secret as 0 | 1,
      timing: requireNumber(record, "timing", path, i + 2),
    };
  });
  if (rows.length === 0) {
    throw new Error(`${path}: no traces`);
  }
  return rows;
}

export function readSweep(path: string): SweepRow[] {
  const rows = parseRecords(path).map((record, i) => {
    const skipped = (record.skip_reason ?? "") !== "";
    return {
      prefix_n: requireNumber(record, "prefix_n", path, i + 2),
      tlri: record.tlri ?? "",
      ks_d: record.ks_d ?? "",
      tlriNum: skipped ? NaN : requireNumber(record, "tlri", path, i + 2),
      ksNum: skipped ? NaN : requireNumber(record, "ks_d", path, i + 2),
      skipped,
    };
  });
  if (rows.length === 0) {
    throw new Error(`${path}: empty sweep`);
  }
  for (let i = 1; i < rows.length; i++) {
    if (rows[i].prefix_n <= rows[i - 1].prefix_n) {
      throw new Error(
        `${path}: prefix_n must be strictly increasing ` +
          `(row ${i + 2}: ${rows[i].prefix_n} after ${rows[i - 1].prefix_n})`,
      );
    }
  }
  return rows;
}
