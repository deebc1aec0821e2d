#!/usr/bin/env node
/** Render diagnostic time series from a timeseries CSV. */
import { runCli } from "./cli.js";
import { renderTimeseries } from "./timeseries.js";

const USAGE = `usage: plot-timeseries --in timeseries.csv --out figure.svg
  [--fields sup_v,sup_u,...] [--log] [--title TEXT]`;

const code = runCli(process.argv.slice(2), USAGE, (opts) =>
  renderTimeseries({
    input: opts.input,
    output: opts.output,
    fields: opts.fields ?? ["sup_v", "sup_u", "sup_s", "sup_z"],
    logScale: opts.log,
    title: opts.title,
  }),
);
process.exit(code);
