import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { CsvFormatError, parseChevron, parseOccupations } from "../src/csv.js";

const FIXTURES = new URL("../fixtures/", import.meta.url).pathname;

function tmpFile(name: string, content: string): string {
  const dir = mkdtempSync(join(tmpdir(), "trimirror-plots-"));
  const path = join(dir, name);
  writeFileSync(path, content, "utf-8");
  return path;
}

describe("occupations parser", () => {
  it("reads a real trajectory export with metadata and jump log", () => {
    const run = parseOccupations(join(FIXTURES, "two-photon/occupations_traj_3.csv"));
    expect(run.t.length).toBe(141);
    expect(run.series.n_b[0]).toBeCloseTo(2.0, 1);
    expect(run.meta["scenario"]).toBe("two-photon");
    for (const jump of run.jumps) {
      expect(["a", "b", "c"]).toContain(jump.channel);
      expect(jump.t).toBeGreaterThan(0);
    }
  });

  it("reads ensemble metadata", () => {
    const run = parseOccupations(join(FIXTURES, "two-photon/occupations_ensemble_n15.csv"));
    expect(run.meta["n_traj"]).toBe("15");
    expect(run.jumps).toEqual([]);
  });

  it("names file and line on malformed numbers", () => {
    const path = tmpFile("bad.csv", "t,n_a,n_b,n_c\n0,1,2,3\n1,x,2,3\n");
    expect(() => parseOccupations(path)).toThrowError(CsvFormatError);
    try {
      parseOccupations(path);
    } catch (err) {
      expect(String(err)).toContain("bad.csv:3");
      expect(String(err)).toContain("n_a");
    }
  });

  it("rejects ragged rows with position info", () => {
    const path = tmpFile("ragged.csv", "t,n_a,n_b,n_c\n0,1,2\n");
    expect(() => parseOccupations(path)).toThrowError(/ragged\.csv:2: expected 4 fields/);
  });

  it("rejects wrong columns", () => {
    const path = tmpFile("cols.csv", "t,x,y\n0,1,2\n");
    expect(() => parseOccupations(path)).toThrowError(/expected columns/);
  });
});

describe("chevron parser", () => {
  it("reads the real surface into a rectangular grid", () => {
    const data = parseChevron(join(FIXTURES, "two-photon/chevron.csv"));
    expect(data.t.length).toBe(31);
    expect(data.delta.length).toBe(7);
    expect(data.value.length).toBe(31);
    expect(Math.min(...data.value.flat())).toBeGreaterThanOrEqual(0);
    // initial state is separable
    for (const v of data.value[0]) expect(v).toBeCloseTo(0, 8);
  });

  it("rejects non-rectangular data", () => {
    const path = tmpFile(
      "nonrect.csv",
      "t,delta,E_N\n0,-1,0\n0,1,0\n1,-1,0.5\n",
    );
    expect(() => parseChevron(path)).toThrowError(/non-rectangular/);
  });
});
