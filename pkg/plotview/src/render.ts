/**
 * Figure rendering for the four published kinds.  The renderer only draws
 * what the CSV contains; the one analytic overlay (the disc horodisc circle
 * with centre 1/(1+s) and radius s/(1+s)) is derived from the hororadius in
 * the column header, never from recomputed dynamics.
 */

import { readFileSync } from "node:fs";

import {
  GridShape,
  SchemaError,
  Table,
  col,
  gridShape,
  num,
  numbers,
  orbitShape,
  parseCsv,
  requireColumns,
} from "./csv";
import { Extent, Frame, Svg, extentOf, frame } from "./svg";

export type Kind = "orbit_trajectory" | "norm_curve" | "F_decay" | "horoball_grid";

export interface FigureJob {
  input: string;
  kind: Kind;
  output: string;
  projection?: string; // "cols=re0,im0"
  overlay?: "none" | "horodisc";
}

export interface RenderResult {
  svg: string;
  meta: Record<string, unknown>;
}

const WIDTH = 480;
const HEIGHT = 420;
const SERIES_COLORS = ["#1f6fb4", "#b44a1f", "#3a8f4d", "#7a4ab4", "#b49a1f"];

export function parseProjection(spec: string | undefined, table: Table): [string, string] {
  if (!spec) {
    return ["re0", "im0"];
  }
  const m = /^cols=([^,]+),([^,]+)$/.exec(spec);
  if (!m) {
    throw new SchemaError(`projection must look like cols=re0,im0 (got ${spec})`, []);
  }
  col(table, m[1]);
  col(table, m[2]);
  return [m[1], m[2]];
}

function pairedPoints(
  xs: Array<number | null>,
  ys: Array<number | null>,
): Array<[number, number]> {
  const out: Array<[number, number]> = [];
  for (let i = 0; i < xs.length; i++) {
    const x = xs[i];
    const y = ys[i];
    if (x !== null && y !== null) out.push([x, y]);
  }
  return out;
}

function renderOrbitTrajectory(table: Table, job: FigureJob): RenderResult {
  const shape = orbitShape(table);
  const [cx, cy] = parseProjection(job.projection, table);
  const xs = numbers(table, cx);
  const ys = numbers(table, cy);
  const pts = pairedPoints(xs, ys);
  const svg = new Svg(WIDTH, HEIGHT);
  const meta = {
    kind: job.kind,
    input_columns: table.columns,
    projection: [cx, cy],
    points: pts.length,
    dim: shape.dim,
  };
  svg.metadata(meta);
  const f = frame(svg, extentOf(xs), extentOf(ys), `orbit ${cx} vs ${cy}`);
  const mapped = pts.map(([x, y]): [number, number] => [f.sx.at(x), f.sy.at(y)]);
  svg.polyline(mapped, SERIES_COLORS[0], 1.2);
  for (const [x, y] of mapped) svg.dot(x, y, 1.6, SERIES_COLORS[0]);
  if (mapped.length > 0) {
    svg.dot(mapped[0][0], mapped[0][1], 3.5, "#3a8f4d");
    svg.dot(mapped[mapped.length - 1][0], mapped[mapped.length - 1][1], 3.5, "#b44a1f");
  }
  return { svg: svg.toString(), meta };
}

function renderCurve(
  table: Table,
  job: FigureJob,
  xCol: string,
  yCol: string,
  title: string,
): RenderResult {
  const xs = numbers(table, xCol);
  const ys = numbers(table, yCol);
  const pts = pairedPoints(xs, ys);
  const svg = new Svg(WIDTH, HEIGHT);
  const meta = {
    kind: job.kind,
    input_columns: table.columns,
    points: pts.length,
  };
  svg.metadata(meta);
  const f = frame(svg, extentOf(xs, { min: 0, max: 1 }), extentOf(ys, { min: 0, max: 1 }), title);
  svg.polyline(
    pts.map(([x, y]): [number, number] => [f.sx.at(x), f.sy.at(y)]),
    SERIES_COLORS[0],
    1.5,
  );
  return { svg: svg.toString(), meta };
}

// marching-squares edge pairs; corner bit k set iff corner k is inside,
// corners (i,j), (i+1,j), (i+1,j+1), (i,j+1); edges 0=bottom 1=right 2=top 3=left
const EDGE_PAIRS: Record<number, Array<[number, number]>> = {
  1: [[3, 0]], 2: [[0, 1]], 3: [[3, 1]], 4: [[1, 2]],
  5: [[3, 0], [1, 2]], 6: [[0, 2]], 7: [[3, 2]], 8: [[2, 3]],
  9: [[0, 2]], 10: [[0, 1], [2, 3]], 11: [[1, 2]], 12: [[1, 3]],
  13: [[0, 1]], 14: [[3, 0]],
};

/** Marching-squares boundary segments of a binary field sampled on a grid. */
export function boundarySegments(
  us: number[],
  vs: number[],
  flag: (i: number, j: number) => boolean,
): Array<[number, number, number, number]> {
  const segs: Array<[number, number, number, number]> = [];
  for (let i = 0; i + 1 < us.length; i++) {
    for (let j = 0; j + 1 < vs.length; j++) {
      const idx =
        (flag(i, j) ? 1 : 0) |
        (flag(i + 1, j) ? 2 : 0) |
        (flag(i + 1, j + 1) ? 4 : 0) |
        (flag(i, j + 1) ? 8 : 0);
      if (idx === 0 || idx === 15) continue;
      const u0 = us[i], u1 = us[i + 1], v0 = vs[j], v1 = vs[j + 1];
      const um = (u0 + u1) / 2, vm = (v0 + v1) / 2;
      const e: Array<[number, number]> = [
        [um, v0],
        [u1, vm],
        [um, v1],
        [u0, vm],
      ];
      for (const [a, b] of EDGE_PAIRS[idx]) {
        segs.push([e[a][0], e[a][1], e[b][0], e[b][1]]);
      }
    }
  }
  return segs;
}

function shade(count: number, total: number): string {
  // white (outside every horoball) to deep blue (inside all of them)
  const t = total === 0 ? 0 : count / total;
  const r = Math.round(245 - 150 * t);
  const g = Math.round(247 - 110 * t);
  const b = 250;
  return `rgb(${r},${g},${b})`;
}

function renderHoroballGrid(table: Table, job: FigureJob): RenderResult {
  const shape: GridShape = gridShape(table);
  const { us, vs, radii, memberCols } = shape;
  const iu = col(table, "u");
  const iv = col(table, "v");
  const iin = col(table, "in_ball");
  const members = memberCols.map((c) => col(table, c));
  const uIdx = new Map(us.map((u, i) => [u, i]));
  const vIdx = new Map(vs.map((v, i) => [v, i]));
  const inBall: boolean[][] = us.map(() => vs.map(() => false));
  const flags: boolean[][][] = memberCols.map(() => us.map(() => vs.map(() => false)));
  for (const row of table.rows) {
    const u = num(row[iu]);
    const v = num(row[iv]);
    if (u === null || v === null) continue;
    const i = uIdx.get(u);
    const j = vIdx.get(v);
    if (i === undefined || j === undefined) continue;
    inBall[i][j] = row[iin] === "1";
    members.forEach((mcol, k) => {
      flags[k][i][j] = row[mcol] === "1";
    });
  }

  const svg = new Svg(WIDTH, HEIGHT);
  const overlays: Array<Record<string, number | string>> = [];
  if (job.overlay === "horodisc") {
    for (const s of radii) {
      overlays.push({ type: "circle", s, cx: 1 / (1 + s), cy: 0, r: s / (1 + s) });
    }
  }
  const meta = {
    kind: job.kind,
    input_columns: table.columns,
    radii,
    grid: [us.length, vs.length],
    overlays,
  };
  svg.metadata(meta);
  const f = frame(
    svg,
    extentOf(us.map((x) => x)),
    extentOf(vs.map((x) => x)),
    `horoball grid (s = ${radii.join(", ")})`,
  );
  const du = us.length > 1 ? us[1] - us[0] : 0.1;
  const dv = vs.length > 1 ? vs[1] - vs[0] : 0.1;
  for (let i = 0; i < us.length; i++) {
    for (let j = 0; j < vs.length; j++) {
      if (!inBall[i][j]) continue;
      const count = flags.reduce((acc, fl) => acc + (fl[i][j] ? 1 : 0), 0);
      const x0 = f.sx.at(us[i] - du / 2);
      const x1 = f.sx.at(us[i] + du / 2);
      const y0 = f.sy.at(vs[j] + dv / 2);
      const y1 = f.sy.at(vs[j] - dv / 2);
      svg.rect(x0, y0, x1 - x0, y1 - y0, shade(count, flags.length));
    }
  }
  radii.forEach((s, k) => {
    const color = SERIES_COLORS[k % SERIES_COLORS.length];
    for (const [ua, va, ub, vb] of boundarySegments(us, vs, (i, j) => flags[k][i][j])) {
      svg.line(f.sx.at(ua), f.sy.at(va), f.sx.at(ub), f.sy.at(vb), color, 1.4);
    }
  });
  for (const ov of overlays) {
    const cx = f.sx.at(ov.cx as number);
    const cy = f.sy.at(ov.cy as number);
    const rx = f.sx.at((ov.cx as number) + (ov.r as number)) - cx;
    svg.circle(cx, cy, rx, "#222", "none", 1.0, "4,3");
  }
  return { svg: svg.toString(), meta };
}

export function renderTable(table: Table, job: FigureJob): RenderResult {
  switch (job.kind) {
    case "orbit_trajectory":
      return renderOrbitTrajectory(table, job);
    case "norm_curve":
      requireColumns(table, ["n", "norm"], "orbit");
      orbitShape(table);
      return renderCurve(table, job, "n", "norm", "norm vs n");
    case "F_decay":
      requireColumns(table, ["n", "F"], "F-decay");
      return renderCurve(table, job, "n", "F", "F vs n");
    case "horoball_grid":
      return renderHoroballGrid(table, job);
    default:
      throw new SchemaError(`unknown kind ${job.kind as string}`, []);
  }
}

export function render(job: FigureJob): RenderResult {
  const table = parseCsv(readFileSync(job.input, "utf8"));
  return renderTable(table, job);
}
