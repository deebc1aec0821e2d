#!/usr/bin/env node
/** Render field profiles from a snapshot CSV. */
import { runCli } from "./cli.js";
import { PROFILE_FIELDS, renderProfiles } from "./profiles.js";

const USAGE = `usage: plot-profiles --in snapshot.csv --out figure.svg
  [--fields v,u,theta,z] [--fan riemann.csv] [--no-wave] [--title TEXT]`;

const code = runCli(process.argv.slice(2), USAGE, (opts) =>
  renderProfiles({
    input: opts.input,
    output: opts.output,
    fields: opts.fields ?? [...PROFILE_FIELDS],
    overlayWave: !opts.noWave,
    fanInput: opts.fan,
    title: opts.title,
  }),
);
process.exit(code);
