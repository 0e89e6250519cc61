/** Strict reader for the orbitwave CSV contracts. */

import { readFileSync } from "node:fs";

export class CsvError extends Error {
  constructor(message: string, readonly path: string) {
    super(`${path}: ${message}`);
  }
}

export interface Table {
  columns: Map<string, Float64Array>;
  rows: number;
}

/** Parse a CSV with one header row, comma separators, all-numeric cells. */
export function parseCsv(text: string, path: string, required: string[]): Table {
  const lines = text.split("\n");
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) throw new CsvError("empty file", path);
  const header = lines[0].split(",");
  for (const name of required) {
    if (!header.includes(name)) {
      throw new CsvError(`missing required column '${name}' (found: ${header.join(",")})`, path);
    }
  }
  const rows = lines.length - 1;
  if (rows === 0) throw new CsvError("no data rows", path);
  const data = header.map(() => new Float64Array(rows));
  for (let i = 0; i < rows; i++) {
    const cells = lines[i + 1].split(",");
    if (cells.length !== header.length) {
      throw new CsvError(`row ${i + 2} has ${cells.length} cells, expected ${header.length}`, path);
    }
    for (let j = 0; j < cells.length; j++) {
      const v = Number(cells[j]);
      if (!Number.isFinite(v)) {
        throw new CsvError(`row ${i + 2}, column '${header[j]}': not a finite number: '${cells[j]}'`, path);
      }
      data[j][i] = v;
    }
  }
  const columns = new Map<string, Float64Array>();
  header.forEach((name, j) => columns.set(name, data[j]));
  return { columns, rows };
}

export function readTable(path: string, required: string[]): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch {
    throw new CsvError("cannot read file", path);
  }
  return parseCsv(text, path, required);
}

export function col(table: Table, name: string, path: string): Float64Array {
  const c = table.columns.get(name);
  if (!c) throw new CsvError(`missing column '${name}'`, path);
  return c;
}
