/**
 * render --csv PATH --meta PATH --kind NAME --out PATH
 *
 * Reads a study CSV plus its JSON sidecar and writes one PNG figure.
 * Inputs are opened read-only; identical inputs produce byte-identical
 * output. Exit codes: 0 success, 2 usage or schema error.
 */

import { writeFileSync } from "node:fs";
import { SchemaError } from "./csv.js";
import { renderCutCapacitySeries, renderInterferenceScatter } from "./plot.js";

export const KINDS = ["interference-scatter", "cut-capacity-series"] as const;

export class UsageError extends Error {}

interface Args {
  csv: string;
  meta: string;
  kind: string;
  out: string;
}

export function parseArgs(argv: string[]): Args {
  const values: Record<string, string> = {};
  let i = 0;
  if (argv[0] === "render") i = 1; // allow both `render --csv ...` and `--csv ...`
  for (; i < argv.length; i += 2) {
    const flag = argv[i];
    if (!flag.startsWith("--")) {
      throw new UsageError(`unexpected argument "${flag}"`);
    }
    const value = argv[i + 1];
    if (value === undefined) {
      throw new UsageError(`flag ${flag} needs a value`);
    }
    values[flag.slice(2)] = value;
  }
  for (const required of ["csv", "meta", "kind", "out"]) {
    if (!(required in values)) {
      throw new UsageError(`missing required flag --${required}`);
    }
  }
  return values as unknown as Args;
}

export function run(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
    let image: Buffer;
    if (args.kind === "interference-scatter") {
      image = renderInterferenceScatter(args.csv, args.meta);
    } else if (args.kind === "cut-capacity-series") {
      image = renderCutCapacitySeries(args.csv, args.meta);
    } else {
      throw new UsageError(`unknown kind "${args.kind}"; valid kinds: ${KINDS.join(", ")}`);
    }
    writeFileSync(args.out, image);
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (err) {
    if (err instanceof UsageError || err instanceof SchemaError) {
      console.error(`error: ${err.message}`);
      return 2;
    }
    if (err instanceof Error && "code" in err) {
      console.error(`error: ${err.message}`); // file-system problems
      return 2;
    }
    throw err;
  }
}
