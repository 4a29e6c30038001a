/**
 * Parsers for the trimirror CSV dialect: `#` comment lines carry metadata
 * (`# key: value`) and jump markers (`# jump: t=<v> channel=<c>`), followed
 * by a header row and numeric rows.  Units come from the headers, never
 * from this code.
 */

import { readFileSync } from "node:fs";

export interface JumpMark {
  t: number;
  channel: string;
}

export interface OccupationSeries {
  path: string;
  meta: Record<string, string>;
  jumps: JumpMark[];
  t: number[];
  series: { n_a: number[]; n_b: number[]; n_c: number[] };
}

export interface ChevronData {
  path: string;
  meta: Record<string, string>;
  /** ascending time grid */
  t: number[];
  /** ascending detuning grid */
  delta: number[];
  /** value[timeIndex][deltaIndex] */
  value: number[][];
}

export class CsvFormatError extends Error {
  constructor(path: string, line: number, message: string) {
    super(`${path}:${line}: ${message}`);
    this.name = "CsvFormatError";
  }
}

interface RawTable {
  meta: Record<string, string>;
  jumps: JumpMark[];
  columns: string[];
  rows: number[][];
}

function parseTable(path: string, text: string): RawTable {
  const meta: Record<string, string> = {};
  const jumps: JumpMark[] = [];
  let columns: string[] | null = null;
  const rows: number[][] = [];

  const lines = text.split(/\r?\n/);
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    const lineNo = i + 1;
    if (line.startsWith("#")) {
      const body = line.slice(1).trim();
      const jump = body.match(/^jump:\s*t=([-+0-9.eE]+)\s+channel=(\w+)$/);
      if (jump) {
        jumps.push({ t: Number(jump[1]), channel: jump[2] });
        continue;
      }
      if (body.startsWith("trimirror ")) {
        meta["_kind"] = body.slice("trimirror ".length);
        continue;
      }
      const kv = body.match(/^([A-Za-z_][\w .\-/^<>()\[\],]*?):\s*(.*)$/);
      if (kv) meta[kv[1]] = kv[2];
      continue;
    }
    if (columns === null) {
      columns = line.split(",").map((c) => c.trim());
      continue;
    }
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new CsvFormatError(
        path,
        lineNo,
        `expected ${columns.length} fields, found ${parts.length}`,
      );
    }
    const values = parts.map((p, j) => {
      const v = Number(p);
      if (!Number.isFinite(v)) {
        throw new CsvFormatError(path, lineNo, `field '${columns![j]}' is not a number: ${p}`);
      }
      return v;
    });
    rows.push(values);
  }
  if (columns === null) throw new CsvFormatError(path, lines.length, "missing header row");
  if (rows.length === 0) throw new CsvFormatError(path, lines.length, "no data rows");
  return { meta, jumps, columns, rows };
}

export function parseOccupations(path: string): OccupationSeries {
  const table = parseTable(path, readFileSync(path, "utf-8"));
  const expected = ["t", "n_a", "n_b", "n_c"];
  if (table.columns.join(",") !== expected.join(",")) {
    throw new CsvFormatError(path, 1, `expected columns ${expected.join(",")}, got ${table.columns.join(",")}`);
  }
  return {
    path,
    meta: table.meta,
    jumps: table.jumps,
    t: table.rows.map((r) => r[0]),
    series: {
      n_a: table.rows.map((r) => r[1]),
      n_b: table.rows.map((r) => r[2]),
      n_c: table.rows.map((r) => r[3]),
    },
  };
}

export function parseChevron(path: string): ChevronData {
  const table = parseTable(path, readFileSync(path, "utf-8"));
  const expected = ["t", "delta", "E_N"];
  if (table.columns.join(",") !== expected.join(",")) {
    throw new CsvFormatError(path, 1, `expected columns ${expected.join(",")}, got ${table.columns.join(",")}`);
  }
  const tSet: number[] = [];
  const dSet: number[] = [];
  const seenT = new Set<number>();
  const seenD = new Set<number>();
  for (const [t, d] of table.rows) {
    if (!seenT.has(t)) {
      seenT.add(t);
      tSet.push(t);
    }
    if (!seenD.has(d)) {
      seenD.add(d);
      dSet.push(d);
    }
  }
  tSet.sort((a, b) => a - b);
  dSet.sort((a, b) => a - b);
  if (table.rows.length !== tSet.length * dSet.length) {
    throw new CsvFormatError(
      path,
      1,
      `non-rectangular surface: ${table.rows.length} rows != ` +
        `${tSet.length} times x ${dSet.length} detunings`,
    );
  }
  const tIndex = new Map(tSet.map((v, i) => [v, i]));
  const dIndex = new Map(dSet.map((v, i) => [v, i]));
  const value: number[][] = tSet.map(() => new Array(dSet.length).fill(NaN));
  for (const [t, d, v] of table.rows) {
    value[tIndex.get(t)!][dIndex.get(d)!] = v;
  }
  for (const row of value) {
    for (const v of row) {
      if (Number.isNaN(v)) throw new CsvFormatError(path, 1, "duplicate or missing grid cell");
    }
  }
  return { path, meta: table.meta, t: tSet, delta: dSet, value };
}
