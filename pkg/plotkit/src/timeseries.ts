/**
 * Diagnostic time-series figures: one curve per selected column against
 * t, with an optional log scale for the decaying quantities (sup
 * distances, relative entropy).
 */
import { writeFileSync } from "fs";

import { column, readTimeseries, TIMESERIES_HEADER } from "./csv.js";
import { ensureSvgPath } from "./profiles.js";
import { PALETTE, Panel, Series, renderFigure } from "./svg.js";

export interface TimeseriesJob {
  input: string;
  output: string;
  fields: string[];
  logScale: boolean;
  title?: string;
}

export const TIMESERIES_COLUMNS = TIMESERIES_HEADER.split(",").slice(1);

export function renderTimeseries(job: TimeseriesJob): string {
  ensureSvgPath(job.output);
  const table = readTimeseries(job.input);
  const t = column(table, "t");
  const series: Series[] = job.fields.map((field, i) => ({
    label: field,
    x: t,
    y: column(table, field),
    color: PALETTE[i % PALETTE.length],
    width: 1.8,
  }));
  const panel: Panel = {
    title: job.fields.join(", ") + (job.logScale ? "  (log scale)" : ""),
    series,
    logY: job.logScale,
    xLabel: "t",
  };
  const svg = renderFigure([panel], job.title);
  writeFileSync(job.output, svg, "utf8");
  return job.output;
}
