/**
 * Minimal deterministic SVG construction: pure string assembly with fixed
 * number formatting, no timestamps, no randomness, so identical inputs give
 * byte-identical images.
 */

export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  const s = x.toPrecision(6);
  // normalize "-0" and trailing zeros for byte-stable output
  return String(Number(s));
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const f = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  f.domain = domain;
  f.range = range;
  return f;
}

/** Round ticks covering the domain: 4-6 "nice" values. */
export function ticks(domain: [number, number], count = 5): number[] {
  const [lo, hi] = domain;
  if (lo === hi) return [lo];
  const span = hi - lo;
  const step0 = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * mag);
  const step = candidates.find((c) => span / c <= count) ?? candidates[candidates.length - 1];
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12 * span; v += step) {
    out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return out;
}

export function line(x1: number, y1: number, x2: number, y2: number, attrs: string): string {
  return `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${attrs}/>`;
}

export function polyline(points: Array<[number, number]>, attrs: string): string {
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline points="${pts}" fill="none" ${attrs}/>`;
}

export function rect(x: number, y: number, w: number, h: number, attrs: string): string {
  return `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ${attrs}/>`;
}

export function text(x: number, y: number, content: string, attrs = ""): string {
  return `<text x="${fmt(x)}" y="${fmt(y)}" ${attrs}>${esc(content)}</text>`;
}

export function svgDocument(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}

export interface AxisBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

/** Frame, ticks and labels for one panel; returns svg parts. */
export function axes(
  box: AxisBox,
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
): string[] {
  const parts: string[] = [];
  parts.push(
    rect(box.x, box.y, box.width, box.height, 'fill="none" stroke="#333" stroke-width="1"'),
  );
  for (const v of ticks(xScale.domain)) {
    const px = xScale(v);
    parts.push(line(px, box.y + box.height, px, box.y + box.height + 4, 'stroke="#333"'));
    parts.push(
      text(px, box.y + box.height + 16, fmt(v), 'font-size="10" text-anchor="middle" fill="#333"'),
    );
  }
  for (const v of ticks(yScale.domain)) {
    const py = yScale(v);
    parts.push(line(box.x - 4, py, box.x, py, 'stroke="#333"'));
    parts.push(
      text(box.x - 7, py + 3, fmt(v), 'font-size="10" text-anchor="end" fill="#333"'),
    );
  }
  parts.push(
    text(box.x + box.width / 2, box.y + box.height + 32, xLabel,
      'font-size="11" text-anchor="middle" fill="#333"'),
  );
  parts.push(
    `<text x="${fmt(box.x - 38)}" y="${fmt(box.y + box.height / 2)}" font-size="11" ` +
      `text-anchor="middle" fill="#333" transform="rotate(-90 ${fmt(box.x - 38)} ` +
      `${fmt(box.y + box.height / 2)})">${esc(yLabel)}</text>`,
  );
  return parts;
}
