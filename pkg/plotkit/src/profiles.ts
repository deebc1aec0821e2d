/**
 * Field-profile figures: one panel per selected field, the solution curve
 * overlaid (when toggled) with the smooth wave carried in the snapshot's
 * V/U/Theta columns and, optionally, an exact-fan snapshot from a second
 * CSV produced by the `riemann` verb.
 */
import { writeFileSync } from "fs";

import { SchemaError, Table, column, readSnapshot } from "./csv.js";
import { PALETTE, Panel, Series, renderFigure } from "./svg.js";

export interface ProfileJob {
  input: string;
  output: string;
  fields: string[];
  overlayWave: boolean;
  fanInput?: string;
  title?: string;
}

export const PROFILE_FIELDS = ["v", "u", "theta", "z"] as const;
const WAVE_COLUMN: Record<string, string | null> = { v: "V", u: "U", theta: "Theta", z: null };

export function ensureSvgPath(path: string): void {
  if (!path.endsWith(".svg")) {
    throw new SchemaError(`${path}: only .svg output is supported`);
  }
}

export function renderProfiles(job: ProfileJob): string {
  ensureSvgPath(job.output);
  const snap = readSnapshot(job.input);
  const fan: Table | undefined = job.fanInput ? readSnapshot(job.fanInput) : undefined;
  const x = column(snap, "x");

  const panels: Panel[] = job.fields.map((field) => {
    if (!(PROFILE_FIELDS as readonly string[]).includes(field)) {
      throw new SchemaError(`unknown field ${JSON.stringify(field)}; choose from ${PROFILE_FIELDS.join(", ")}`);
    }
    const series: Series[] = [
      { label: field, x, y: column(snap, field), color: PALETTE[0], width: 1.8 },
    ];
    const waveColumn = WAVE_COLUMN[field];
    if (job.overlayWave && waveColumn !== null) {
      series.push({
        label: `wave ${waveColumn}`,
        x,
        y: column(snap, waveColumn),
        color: PALETTE[1],
        width: 1.2,
        dash: "6 3",
      });
    }
    if (fan !== undefined && waveColumn !== null) {
      series.push({
        label: `fan ${waveColumn}`,
        x: column(fan, "x"),
        y: column(fan, field),
        color: PALETTE[2],
        width: 1.2,
        dash: "2 3",
      });
    }
    return { title: field, series, xLabel: "x" };
  });

  const svg = renderFigure(panels, job.title);
  writeFileSync(job.output, svg, "utf8");
  return job.output;
}
