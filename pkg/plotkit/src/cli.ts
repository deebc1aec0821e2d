/** Shared CLI plumbing for the two plotting entry points. */
import { parseArgs } from "node:util";

import { SchemaError } from "./csv.js";

export interface CommonOptions {
  input: string;
  output: string;
  fields?: string[];
  log: boolean;
  fan?: string;
  noWave: boolean;
  title?: string;
}

export class UsageError extends Error {}

export function parseCommon(argv: string[], usage: string): CommonOptions {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        in: { type: "string" },
        out: { type: "string" },
        fields: { type: "string" },
        log: { type: "boolean", default: false },
        fan: { type: "string" },
        "no-wave": { type: "boolean", default: false },
        title: { type: "string" },
        help: { type: "boolean", default: false },
      },
      allowPositionals: false,
    });
  } catch (err) {
    throw new UsageError(`${(err as Error).message}\n${usage}`);
  }
  const values = parsed.values;
  if (values.help) {
    throw new UsageError(usage);
  }
  if (!values.in || !values.out) {
    throw new UsageError(`--in and --out are required\n${usage}`);
  }
  return {
    input: values.in,
    output: values.out,
    fields: values.fields?.split(",").map((f) => f.trim()).filter((f) => f.length > 0),
    log: values.log ?? false,
    fan: values.fan,
    noWave: values["no-wave"] ?? false,
    title: values.title,
  };
}

/** Run a renderer and map failures to exit codes (1 usage, 2 bad input). */
export function runCli(argv: string[], usage: string, render: (opts: CommonOptions) => string): number {
  try {
    const opts = parseCommon(argv, usage);
    const path = render(opts);
    console.log(`wrote ${path}`);
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(err.message);
      return 1;
    }
    if (err instanceof SchemaError || (err as NodeJS.ErrnoException).code === "ENOENT") {
      console.error(`error: ${(err as Error).message}`);
      return 2;
    }
    throw err;
  }
}
