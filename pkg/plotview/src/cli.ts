#!/usr/bin/env node
/**
 * plotview render --kind K --in data.csv --out fig.svg [--proj "cols=re0,im0"]
 *                 [--overlay horodisc]
 *
 * Kinds: orbit_trajectory | norm_curve | F_decay | horoball_grid
 * Exit codes: 0 ok, 1 schema/render error (column diff on stderr), 2 usage.
 */

import { writeFileSync } from "node:fs";

import { SchemaError } from "./csv";
import { FigureJob, Kind, render } from "./render";

const KINDS: Kind[] = ["orbit_trajectory", "norm_curve", "F_decay", "horoball_grid"];

function usage(msg?: string): number {
  if (msg) process.stderr.write(`error: ${msg}\n`);
  process.stderr.write(
    "usage: plotview render --kind KIND --in data.csv --out fig.svg " +
      '[--proj "cols=re0,im0"] [--overlay horodisc]\n',
  );
  return 2;
}

export function main(argv: string[]): number {
  if (argv[0] !== "render") {
    return usage(argv.length ? `unknown command ${argv[0]}` : "missing command");
  }
  const opts = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || i + 1 >= argv.length) {
      return usage(`bad argument ${key}`);
    }
    opts.set(key.slice(2), argv[i + 1]);
  }
  const kind = opts.get("kind") as Kind | undefined;
  const input = opts.get("in");
  const output = opts.get("out");
  if (!kind || !KINDS.includes(kind)) {
    return usage(`--kind must be one of ${KINDS.join(", ")}`);
  }
  if (!input || !output) {
    return usage("--in and --out are required");
  }
  const overlay = opts.get("overlay");
  if (overlay !== undefined && overlay !== "horodisc" && overlay !== "none") {
    return usage("--overlay must be horodisc or none");
  }
  const job: FigureJob = {
    kind,
    input,
    output,
    projection: opts.get("proj"),
    overlay: (overlay as FigureJob["overlay"]) ?? "none",
  };
  try {
    const result = render(job);
    writeFileSync(output, result.svg);
    process.stdout.write(`wrote ${output}\n`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      for (const line of err.diff) process.stderr.write(`  ${line}\n`);
      return 1;
    }
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
