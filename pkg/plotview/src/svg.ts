/**
 * Deterministic SVG assembly: fixed decimal formatting, no timestamps,
 * insertion-ordered metadata; the same input always yields identical bytes.
 */

export function fmt(x: number): string {
  const s = x.toFixed(4);
  return s === "-0.0000" ? "0.0000" : s;
}

export interface Extent {
  min: number;
  max: number;
}

export function extentOf(values: Array<number | null>, fallback: Extent = { min: -1, max: 1 }): Extent {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v === null) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo > hi) return fallback;
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const pad = 0.05 * (hi - lo);
  return { min: lo - pad, max: hi + pad };
}

export class Scale {
  constructor(
    public readonly domain: Extent,
    public readonly range: Extent,
  ) {}

  at(x: number): number {
    const t = (x - this.domain.min) / (this.domain.max - this.domain.min);
    return this.range.min + t * (this.range.max - this.range.min);
  }
}

export class Svg {
  private parts: string[] = [];

  constructor(
    public readonly width: number,
    public readonly height: number,
  ) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="monospace" font-size="11">`,
    );
  }

  metadata(obj: unknown): void {
    this.parts.push(`<metadata id="plotview">${JSON.stringify(obj)}</metadata>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string, stroke = "none"): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}" stroke="${stroke}"/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.5): void {
    if (points.length === 0) return;
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  circle(cx: number, cy: number, r: number, stroke: string, fill = "none", width = 1.5, dash = ""): void {
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}" stroke="${stroke}" stroke-width="${width}"${d}/>`,
    );
  }

  dot(cx: number, cy: number, r: number, fill: string): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}"/>`);
  }

  text(x: number, y: number, s: string, anchor = "start"): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" fill="#333">${escapeXml(s)}</text>`,
    );
  }

  raw(s: string): void {
    this.parts.push(s);
  }

  toString(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export interface Frame {
  sx: Scale;
  sy: Scale;
}

/** Draw the plot frame with min/max tick labels and return the data scales. */
export function frame(
  svg: Svg,
  xDom: Extent,
  yDom: Extent,
  title: string,
  margin = 45,
): Frame {
  const sx = new Scale(xDom, { min: margin, max: svg.width - 15 });
  const sy = new Scale(yDom, { min: svg.height - margin, max: 15 });
  svg.rect(margin, 15, svg.width - 15 - margin, svg.height - margin - 15, "none", "#999");
  svg.text(margin, 12, title);
  svg.text(margin, svg.height - margin + 14, trimNum(xDom.min));
  svg.text(svg.width - 15, svg.height - margin + 14, trimNum(xDom.max), "end");
  svg.text(margin - 4, svg.height - margin, trimNum(yDom.min), "end");
  svg.text(margin - 4, 24, trimNum(yDom.max), "end");
  return { sx, sy };
}

function trimNum(x: number): string {
  const s = x.toPrecision(4);
  return String(Number(s));
}
