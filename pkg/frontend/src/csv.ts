/**
 * Reader for slicelab trace CSVs.
 *
 * Layout: `#`-prefixed manifest lines (`# key = value`), one header row,
 * then one data row per tick. All twelve columns are required; a missing
 * or reordered column is reported by name.
 */

import { readFileSync } from "fs";

export const TRACE_COLUMNS = [
  "t", "arrivals", "activated", "rejected", "u", "queue_len", "delta", "w",
  "free_core_hard", "free_core_soft", "free_access_hard", "free_access_soft",
] as const;

export type ColumnName = (typeof TRACE_COLUMNS)[number];

export interface TraceFile {
  path: string;
  manifest: Record<string, string>;
  columns: Record<ColumnName, Float64Array>;
  rows: number;
}

export class CsvError extends Error {}

export function parseTraceCsv(text: string, path = "<text>"): TraceFile {
  const manifest: Record<string, string> = {};
  let header: string[] | null = null;
  const rows: number[][] = [];

  const lines = text.split(/\r?\n/);
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line.length === 0) continue;
    if (line.startsWith("#")) {
      const body = line.slice(1).trim();
      const eq = body.indexOf("=");
      if (eq > 0) {
        manifest[body.slice(0, eq).trim()] = body.slice(eq + 1).trim();
      }
      continue;
    }
    if (header === null) {
      header = line.split(",");
      for (const required of TRACE_COLUMNS) {
        if (!header.includes(required)) {
          throw new CsvError(`${path}: missing column '${required}'`);
        }
      }
      continue;
    }
    const parts = line.split(",");
    if (parts.length !== header.length) {
      throw new CsvError(
        `${path}: line ${i + 1} has ${parts.length} fields, expected ${header.length}`);
    }
    const values = parts.map(Number);
    const bad = values.findIndex(Number.isNaN);
    if (bad >= 0) {
      throw new CsvError(`${path}: line ${i + 1}: non-numeric '${parts[bad]}'`);
    }
    rows.push(values);
  }

  if (header === null) {
    throw new CsvError(`${path}: no header row found`);
  }

  const columns = {} as Record<ColumnName, Float64Array>;
  for (const name of TRACE_COLUMNS) {
    const idx = header.indexOf(name);
    const column = new Float64Array(rows.length);
    for (let r = 0; r < rows.length; r++) column[r] = rows[r][idx];
    columns[name] = column;
  }
  return { path, manifest, columns, rows: rows.length };
}

export function readTraceCsv(path: string): TraceFile {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new CsvError(`cannot read ${path}: ${(err as Error).message}`);
  }
  return parseTraceCsv(text, path);
}
