/**
 * Strict readers for the two radgas CSV schemas.
 *
 * plotkit never recomputes physics: every number it draws comes from a
 * CSV cell, and files are rejected unless their header matches a known
 * schema exactly.
 */
import { readFileSync } from "fs";

export const SNAPSHOT_HEADER = "x,v,u,theta,z,V,U,Theta";
export const TIMESERIES_HEADER =
  "t,sup_v,sup_u,sup_s,sup_z,eta_total,dissipation,h1_perturbation," +
  "min_v,max_v,min_theta,max_theta,min_z,max_z,reactant_mass";

export class SchemaError extends Error {}

export interface Table {
  columns: string[];
  /** column name -> values, one entry per data row */
  data: Map<string, number[]>;
  rows: number;
}

function parseTable(path: string, expectedHeader: string): Table {
  const text = readFileSync(path, "utf8");
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0 || lines[0] !== expectedHeader) {
    throw new SchemaError(
      `${path}: unexpected header ${JSON.stringify(lines[0] ?? "")}; expected ${JSON.stringify(expectedHeader)}`,
    );
  }
  if (lines.length === 1) {
    throw new SchemaError(`${path}: no data rows`);
  }
  const columns = expectedHeader.split(",");
  const data = new Map<string, number[]>(columns.map((c) => [c, []]));
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== columns.length) {
      throw new SchemaError(`${path}: row ${i} has ${cells.length} cells, expected ${columns.length}`);
    }
    for (let j = 0; j < columns.length; j++) {
      const value = Number(cells[j]);
      if (Number.isNaN(value) && cells[j] !== "nan") {
        throw new SchemaError(`${path}: row ${i}, column ${columns[j]}: unparseable cell ${JSON.stringify(cells[j])}`);
      }
      data.get(columns[j])!.push(value);
    }
  }
  return { columns, data, rows: lines.length - 1 };
}

export function readSnapshot(path: string): Table {
  return parseTable(path, SNAPSHOT_HEADER);
}

export function readTimeseries(path: string): Table {
  return parseTable(path, TIMESERIES_HEADER);
}

export function column(table: Table, name: string): number[] {
  const values = table.data.get(name);
  if (values === undefined) {
    throw new SchemaError(`unknown column ${JSON.stringify(name)}; available: ${table.columns.join(", ")}`);
  }
  return values;
}
