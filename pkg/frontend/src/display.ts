/**
 * Display-only summaries of a timing sample: histogram, ECDF and a KDE with
 * Scott's-rule bandwidth. These exist purely to draw shapes; every number
 * that annotates a figure comes from the engine's results files instead.
 */

export interface Histogram {
  edges: number[];
  density: number[]; // per-bin probability density
}

export function histogram(values: number[], lo: number, hi: number, bins: number): Histogram {
  if (hi <= lo) throw new Error("histogram range is degenerate");
  const width = (hi - lo) / bins;
  const counts = new Array<number>(bins).fill(0);
  for (const v of values) {
    let b = Math.floor((v - lo) / width);
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;
    counts[b] += 1;
  }
  const edges = Array.from({ length: bins + 1 }, (_, i) => lo + i * width);
  const density = counts.map((c) => c / (values.length * width));
  return { edges, density };
}

export function ecdf(values: number[]): [number, number][] {
  const sorted = [...values].sort((a, b) => a - b);
  return sorted.map((x, i) => [x, (i + 1) / sorted.length]);
}

export function mean(values: number[]): number {
  return values.reduce((a, b) => a + b, 0) / values.length;
}

export function sampleStd(values: number[]): number {
  if (values.length < 2) return 0;
  const m = mean(values);
  const ss = values.reduce((acc, v) => acc + (v - m) ** 2, 0);
  return Math.sqrt(ss / (values.length - 1));
}

export function scottBandwidth(values: number[]): number {
  // h = sigma * n^(-1/5); display smoothing only
  return sampleStd(values) * Math.pow(values.length, -1 / 5);
}

export function kde(values: number[], grid: number[], bandwidth?: number): number[] {
  const h = bandwidth ?? scottBandwidth(values);
  if (!(h > 0)) {
    // constant sample: draw a spike at the single value
    return grid.map((x) => (x === values[0] ? 1 : 0));
  }
  const norm = 1 / (values.length * h * Math.sqrt(2 * Math.PI));
  return grid.map((x) => {
    let acc = 0;
    for (const v of values) {
      const z = (x - v) / h;
      acc += Math.exp(-0.5 * z * z);
    }
    return acc * norm;
  });
}

export function linspace(lo: number, hi: number, n: number): number[] {
  return Array.from({ length: n }, (_, i) => lo + ((hi - lo) * i) / (n - 1));
}
