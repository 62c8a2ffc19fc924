import assert from "node:assert/strict";
import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, readdirSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import path from "node:path";
import { test } from "node:test";

import { SchemaError, numbers, parseCsv } from "../src/csv";
import { FigureJob, Kind, render, renderTable } from "../src/render";

const FIXTURES = path.join(__dirname, "..", "..", "test", "fixtures");
const CLI = path.join(__dirname, "..", "src", "cli.js");

function demos(): string[] {
  return readdirSync(FIXTURES).sort();
}

function job(kind: Kind, input: string, extra: Partial<FigureJob> = {}): FigureJob {
  return { kind, input, output: "/dev/null", overlay: "none", ...extra };
}

function metaOf(svg: string): Record<string, unknown> {
  const m = /<metadata id="plotview">(.*?)<\/metadata>/.exec(svg);
  assert.ok(m, "figure carries plotview metadata");
  return JSON.parse(m![1]);
}

test("renders every demo orbit, decay, and horoball CSV without error", () => {
  let figures = 0;
  for (const demo of demos()) {
    const dir = path.join(FIXTURES, demo);
    for (const file of readdirSync(dir).sort()) {
      const full = path.join(dir, file);
      if (file.startsWith("orbit_")) {
        for (const kind of ["orbit_trajectory", "norm_curve"] as Kind[]) {
          const out = render(job(kind, full));
          assert.ok(out.svg.startsWith("<svg"));
          assert.ok(out.svg.trimEnd().endsWith("</svg>"));
          figures++;
        }
      } else if (file === "f_decay.csv") {
        const out = render(job("F_decay", full));
        assert.ok(out.svg.includes("polyline"));
        figures++;
      } else if (file === "horoball_grid.csv") {
        const out = render(job("horoball_grid", full));
        assert.ok(out.svg.includes("rect"));
        figures++;
      }
    }
  }
  assert.ok(figures >= 36, `rendered ${figures} figures`);
});

test("byte-identical re-render", () => {
  for (const demo of ["disc-hyperbolic", "bidisc-case-b", "rect22"]) {
    const grid = path.join(FIXTURES, demo, "horoball_grid.csv");
    const a = render(job("horoball_grid", grid, { overlay: "horodisc" }));
    const b = render(job("horoball_grid", grid, { overlay: "horodisc" }));
    assert.equal(a.svg, b.svg);
    const orbitFile = path.join(FIXTURES, demo, "orbit_s00.csv");
    assert.equal(
      render(job("orbit_trajectory", orbitFile)).svg,
      render(job("orbit_trajectory", orbitFile)).svg,
    );
  }
});

test("disc horodisc overlay parameters read back from metadata", () => {
  const grid = path.join(FIXTURES, "disc-hyperbolic", "horoball_grid.csv");
  const out = render(job("horoball_grid", grid, { overlay: "horodisc" }));
  const meta = metaOf(out.svg);
  const overlays = meta.overlays as Array<Record<string, number>>;
  assert.ok(overlays.length >= 1);
  for (const ov of overlays) {
    assert.equal(ov.cx, 1 / (1 + ov.s));
    assert.equal(ov.r, ov.s / (1 + ov.s));
    assert.equal(ov.cy, 0);
  }
  const sValues = overlays.map((o) => o.s);
  assert.deepEqual(sValues, [0.5, 1, 2]);
});

test("disc grid membership boundary coincides with the horodisc circle", () => {
  const grid = path.join(FIXTURES, "disc-hyperbolic", "horoball_grid.csv");
  const table = parseCsv(readFileSync(grid, "utf8"));
  const us = numbers(table, "u");
  const sCol = table.columns.indexOf("member_s1");
  assert.ok(sCol > 0);
  // boundary cells of the s=1 flag sit within one grid cell of |z - 1/2| = 1/2
  const uvals = Array.from(new Set(us.filter((x): x is number => x !== null))).sort(
    (a, b) => a - b,
  );
  const cell = uvals[1] - uvals[0];
  const uIdx = table.columns.indexOf("u");
  const vIdx = table.columns.indexOf("v");
  const flagAt = new Map<string, boolean>();
  for (const row of table.rows) {
    flagAt.set(`${row[uIdx]},${row[vIdx]}`, row[sCol] === "1");
  }
  for (const row of table.rows) {
    if (row[sCol] !== "1") continue;
    const u = Number(row[uIdx]);
    const v = Number(row[vIdx]);
    const d = Math.hypot(u - 0.5, v);
    assert.ok(d <= 0.5 + cell, `member cell at distance ${d}`);
  }
});

test("header-only orbit CSV renders empty axes and exits 0 via the CLI", () => {
  const dir = mkdtempSync(path.join(tmpdir(), "plotview-"));
  const csv = path.join(dir, "empty.csv");
  writeFileSync(csv, "n,re0,im0,norm,kobayashi_step\n");
  const out = path.join(dir, "empty.svg");
  execFileSync("node", [CLI, "render", "--kind", "orbit_trajectory", "--in", csv, "--out", out]);
  const svg = readFileSync(out, "utf8");
  assert.ok(svg.includes("<svg"));
  assert.equal((metaOf(svg) as { points: number }).points, 0);
});

test("schema mismatch exits nonzero with a column diff", () => {
  const dir = mkdtempSync(path.join(tmpdir(), "plotview-"));
  const csv = path.join(dir, "bad.csv");
  writeFileSync(csv, "n,re0,im0,norm\n1,0.1,0.2,0.3\n");
  const out = path.join(dir, "bad.svg");
  let code = 0;
  let stderr = "";
  try {
    execFileSync("node", [CLI, "render", "--kind", "norm_curve", "--in", csv, "--out", out], {
      stdio: ["ignore", "ignore", "pipe"],
    });
  } catch (err) {
    const e = err as { status: number; stderr: Buffer };
    code = e.status;
    stderr = e.stderr.toString();
  }
  assert.equal(code, 1);
  assert.match(stderr, /kobayashi_step/);
});

test("projection flag selects coordinate columns", () => {
  const orbitFile = path.join(FIXTURES, "bidisc-case-b", "orbit_s00.csv");
  const out = render(job("orbit_trajectory", orbitFile, { projection: "cols=re1,im1" }));
  assert.deepEqual((metaOf(out.svg) as { projection: string[] }).projection, ["re1", "im1"]);
  assert.throws(
    () => render(job("orbit_trajectory", orbitFile, { projection: "cols=re9,im9" })),
    SchemaError,
  );
});

test("bidisc case (b) orbit: both coordinate moduli march to 1", () => {
  const orbitFile = path.join(FIXTURES, "bidisc-case-b", "orbit_s00.csv");
  const table = parseCsv(readFileSync(orbitFile, "utf8"));
  for (const k of [0, 1]) {
    const re = numbers(table, `re${k}`);
    const im = numbers(table, `im${k}`);
    const mods = re.map((r, i) => Math.hypot(r ?? 0, im[i] ?? 0));
    for (let i = 1; i < mods.length; i++) {
      assert.ok(mods[i] >= mods[i - 1] - 1e-12, `modulus ${k} monotone at ${i}`);
    }
    assert.ok(mods[mods.length - 1] > 1 - 1e-6);
  }
});

test("F decay curve data is positive and eventually small for case (b)", () => {
  const decayFile = path.join(FIXTURES, "bidisc-case-b", "f_decay.csv");
  const table = parseCsv(readFileSync(decayFile, "utf8"));
  const fvals = numbers(table, "F").filter((v): v is number => v !== null);
  assert.ok(fvals.every((v) => v > 0));
  assert.ok(fvals[fvals.length - 1] < 1e-3);
  const out = renderTable(table, job("F_decay", decayFile));
  assert.ok(out.svg.includes("F vs n"));
});

test("horoball grid metadata reports the hororadius list", () => {
  for (const demo of demos()) {
    const grid = path.join(FIXTURES, demo, "horoball_grid.csv");
    const out = render(job("horoball_grid", grid));
    const meta = metaOf(out.svg) as { radii: number[] };
    assert.deepEqual(meta.radii, [0.5, 1, 2]);
  }
});
