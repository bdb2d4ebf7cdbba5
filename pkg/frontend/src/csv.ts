/** CSV + sidecar parsing against the report schemas, with named diagnostics. */

import { readFileSync } from "node:fs";

export class SchemaError extends Error {}

export interface Table {
  columns: string[];
  rows: number[][];
  /** column values by name */
  column(name: string): number[];
}

export function parseCsv(path: string, requiredColumns: string[]): Table {
  const text = readFileSync(path, "utf8");
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(`${path}: empty file`);
  }
  const columns = lines[0].split(",");
  for (const required of requiredColumns) {
    if (!columns.includes(required)) {
      throw new SchemaError(`${path}: missing column "${required}"`);
    }
  }
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== columns.length) {
      throw new SchemaError(`${path}: row ${i} has ${cells.length} cells, expected ${columns.length}`);
    }
    const row = cells.map((cell) => Number(cell));
    const bad = row.findIndex((v) => Number.isNaN(v));
    if (bad >= 0) {
      throw new SchemaError(`${path}: row ${i} has a non-numeric value in column "${columns[bad]}"`);
    }
    rows.push(row);
  }
  if (rows.length === 0) {
    throw new SchemaError(`${path}: no data rows`);
  }
  return {
    columns,
    rows,
    column(name: string): number[] {
      const idx = columns.indexOf(name);
      return rows.map((row) => row[idx]);
    },
  };
}

export function parseMeta(path: string, requiredKeys: string[]): Record<string, unknown> {
  let parsed: unknown;
  try {
    parsed = JSON.parse(readFileSync(path, "utf8"));
  } catch (err) {
    throw new SchemaError(`${path}: not valid JSON (${(err as Error).message})`);
  }
  if (typeof parsed !== "object" || parsed === null || Array.isArray(parsed)) {
    throw new SchemaError(`${path}: expected a JSON object`);
  }
  const meta = parsed as Record<string, unknown>;
  for (const key of requiredKeys) {
    if (!(key in meta) || meta[key] === null) {
      throw new SchemaError(`${path}: missing key "${key}"`);
    }
  }
  return meta;
}

export function metaNumber(meta: Record<string, unknown>, key: string, path: string): number {
  const value = meta[key];
  if (typeof value !== "number" || Number.isNaN(value)) {
    throw new SchemaError(`${path}: key "${key}" must be a number`);
  }
  return value;
}

export function metaString(meta: Record<string, unknown>, key: string, path: string): string {
  const value = meta[key];
  if (typeof value !== "string") {
    throw new SchemaError(`${path}: key "${key}" must be a string`);
  }
  return value;
}
