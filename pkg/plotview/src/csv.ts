/**
 * CSV parsing and schema validation for the published symdom CSV formats.
 *
 * Orbit CSVs:         n, re0, im0, ..., re{d-1}, im{d-1}, norm, kobayashi_step
 * F-decay CSVs:       n, F
 * Horoball grid CSVs: u, v, in_ball, F, member_s<radius>...
 */

export interface Table {
  columns: string[];
  rows: string[][];
}

export class SchemaError extends Error {
  constructor(message: string, public readonly diff: string[]) {
    super(message);
    this.name = "SchemaError";
  }
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty CSV: no header row", ["missing header"]);
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((l) => l.split(","));
  for (const row of rows) {
    if (row.length !== columns.length) {
      throw new SchemaError(
        `row has ${row.length} fields, header has ${columns.length}`,
        [`row arity ${row.length} != ${columns.length}`],
      );
    }
  }
  return { columns, rows };
}

export function col(table: Table, name: string): number {
  const i = table.columns.indexOf(name);
  if (i < 0) {
    throw new SchemaError(`missing column ${name}`, columnDiff(table, [name]));
  }
  return i;
}

export function num(value: string): number | null {
  if (value === "") return null;
  const v = Number(value);
  return Number.isFinite(v) ? v : null;
}

export function numbers(table: Table, name: string): Array<number | null> {
  const i = col(table, name);
  return table.rows.map((r) => num(r[i]));
}

function columnDiff(table: Table, expected: string[]): string[] {
  const have = new Set(table.columns);
  const want = new Set(expected);
  const diff: string[] = [];
  for (const c of expected) if (!have.has(c)) diff.push(`missing: ${c}`);
  for (const c of table.columns) if (!want.has(c)) diff.push(`unexpected: ${c}`);
  return diff;
}

/** Validate an exact schema prefix; extra trailing member_s columns allowed when open-ended. */
export function requireColumns(table: Table, expected: string[], what: string): void {
  const missing = expected.filter((c) => !table.columns.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `${what} CSV does not match the published schema`,
      columnDiff(table, expected),
    );
  }
}

export interface OrbitShape {
  dim: number;
  pairs: Array<[string, string]>;
}

/** An orbit CSV carries n, d re/im pairs, norm, kobayashi_step in that order. */
export function orbitShape(table: Table): OrbitShape {
  const cols = table.columns;
  const ok =
    cols[0] === "n" &&
    cols[cols.length - 2] === "norm" &&
    cols[cols.length - 1] === "kobayashi_step" &&
    (cols.length - 3) % 2 === 0;
  const dim = ok ? (cols.length - 3) / 2 : 0;
  const pairs: Array<[string, string]> = [];
  for (let k = 0; k < dim; k++) {
    if (cols[1 + 2 * k] !== `re${k}` || cols[2 + 2 * k] !== `im${k}`) {
      throw new SchemaError(
        "orbit CSV does not match the published schema",
        columnDiff(table, ["n", "re0", "im0", "norm", "kobayashi_step"]),
      );
    }
    pairs.push([`re${k}`, `im${k}`]);
  }
  if (!ok) {
    throw new SchemaError(
      "orbit CSV does not match the published schema",
      columnDiff(table, ["n", "re0", "im0", "norm", "kobayashi_step"]),
    );
  }
  return { dim, pairs };
}

export interface GridShape {
  us: number[];
  vs: number[];
  radii: number[]; // horoball radii from the member_s<r> headers
  memberCols: string[];
}

export function gridShape(table: Table): GridShape {
  requireColumns(table, ["u", "v", "in_ball", "F"], "horoball grid");
  const memberCols = table.columns.filter((c) => c.startsWith("member_s"));
  if (memberCols.length === 0) {
    throw new SchemaError("horoball grid CSV has no member_s columns", [
      "missing: member_s<radius>",
    ]);
  }
  const radii = memberCols.map((c) => {
    const r = Number(c.slice("member_s".length));
    if (!Number.isFinite(r) || r <= 0) {
      throw new SchemaError(`malformed member column ${c}`, [`unexpected: ${c}`]);
    }
    return r;
  });
  const uniq = (vals: Array<number | null>) => {
    const set = new Set<number>();
    for (const v of vals) if (v !== null) set.add(v);
    return Array.from(set).sort((a, b) => a - b);
  };
  return {
    us: uniq(numbers(table, "u")),
    vs: uniq(numbers(table, "v")),
    radii,
    memberCols,
  };
}
