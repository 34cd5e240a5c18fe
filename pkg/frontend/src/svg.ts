/** Minimal deterministic SVG assembly: fixed precision, no runtime state. */

export function fmt(value: number): string {
  if (!Number.isFinite(value)) throw new Error(`non-finite coordinate: ${value}`);
  // fixed precision keeps output byte-stable across platforms
  return Number(value.toFixed(3)).toString();
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export type Attrs = Record<string, string | number>;

export function tag(name: string, attrs: Attrs, children = ""): string {
  const rendered = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : esc(v)}"`)
    .join(" ");
  return children === ""
    ? `<${name} ${rendered}/>`
    : `<${name} ${rendered}>${children}</${name}>`;
}

export function text(x: number, y: number, content: string, attrs: Attrs = {}): string {
  return tag("text", { x, y, "font-family": "sans-serif", ...attrs }, esc(content));
}

export function polyline(points: [number, number][], attrs: Attrs): string {
  const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return tag("polyline", { points: joined, fill: "none", ...attrs });
}

export function polygon(points: [number, number][], attrs: Attrs): string {
  const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return tag("polygon", { points: joined, ...attrs });
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}

export const CLASS_COLORS: [string, string] = ["#1f77b4", "#d62728"];
