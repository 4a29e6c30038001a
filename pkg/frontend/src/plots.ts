/**
 * The four figure kinds rendered from trimirror CSV exports:
 *
 * - trajectory-panel:       one panel per input run, three occupation curves,
 *                           jump times marked when the file carries a jump log
 * - ensemble-panel:         single-run alias of trajectory-panel
 * - convergence-comparison: ensembles at several trajectory counts overlaid
 *                           on the master equation, one subplot per mode,
 *                           with the max deviation per count printed
 * - chevron-heatmap:        E_N(t, delta) surface with a colorbar
 *
 * Rendering is read-only and deterministic; axis labels and units come from
 * the files' headers.
 */

import { ChevronData, OccupationSeries } from "./csv.js";
import { heat, MODE_COLORS, MODE_LABELS } from "./color.js";
import { axes, fmt, line, linearScale, polyline, rect, svgDocument, text } from "./svg.js";

const MODES = ["n_a", "n_b", "n_c"] as const;

const TIME_LABEL = "t [1/omega_b]";
const OCC_LABEL = "occupation";

function runTitle(run: OccupationSeries): string {
  const meta = run.meta;
  if (meta["trajectory_index"] !== undefined) {
    return `trajectory ${meta["trajectory_index"]}`;
  }
  if (meta["n_traj"] !== undefined) return `average of ${meta["n_traj"]} trajectories`;
  if ((meta["_kind"] ?? "").includes("master equation")) return "master equation";
  return (meta["_kind"] ?? "occupations").replace(/^occupations\s*/, "").replace(/[()]/g, "").trim() || "occupations";
}

function occupancyRange(runs: OccupationSeries[]): [number, number] {
  let hi = 0;
  for (const run of runs) {
    for (const mode of MODES) {
      for (const v of run.series[mode]) hi = Math.max(hi, v);
    }
  }
  return [0, hi === 0 ? 1 : hi * 1.05];
}

export function renderTimeSeries(runs: OccupationSeries[], title = ""): string {
  if (runs.length === 0) throw new Error("no input series");
  const width = 640;
  const panelH = 180;
  const margin = { left: 64, right: 16, top: 36, betweenPanels: 30, bottom: 48 };
  const height =
    margin.top + runs.length * panelH + (runs.length - 1) * margin.betweenPanels + margin.bottom;
  const body: string[] = [];
  if (title) body.push(text(width / 2, 20, title, 'font-size="14" text-anchor="middle"'));

  const tAll: [number, number] = [
    Math.min(...runs.map((r) => r.t[0])),
    Math.max(...runs.map((r) => r.t[r.t.length - 1])),
  ];
  const yDomain = occupancyRange(runs);

  runs.forEach((run, p) => {
    const boxY = margin.top + p * (panelH + margin.betweenPanels);
    const box = { x: margin.left, y: boxY, width: width - margin.left - margin.right, height: panelH };
    const xS = linearScale(tAll, [box.x, box.x + box.width]);
    const yS = linearScale(yDomain, [box.y + box.height, box.y]);
    const isLast = p === runs.length - 1;
    body.push(...axes(box, xS, yS, isLast ? TIME_LABEL : "", OCC_LABEL));
    body.push(
      text(box.x + 6, box.y - 6, runTitle(run), 'font-size="11" fill="#333"'),
    );
    for (const jump of run.jumps) {
      const px = xS(jump.t);
      body.push(
        line(px, box.y, px, box.y + box.height,
          'stroke="#888" stroke-width="1" stroke-dasharray="4,3"'),
      );
      body.push(
        text(px + 3, box.y + 12, jump.channel, 'font-size="10" fill="#888"'),
      );
    }
    for (const mode of MODES) {
      const pts = run.t.map((t, i) => [xS(t), yS(run.series[mode][i])] as [number, number]);
      body.push(polyline(pts, `stroke="${MODE_COLORS[mode]}" stroke-width="1.5"`));
    }
    if (p === 0) {
      MODES.forEach((mode, i) => {
        const lx = box.x + box.width - 150;
        const ly = box.y + 14 + 14 * i;
        body.push(line(lx, ly - 4, lx + 18, ly - 4, `stroke="${MODE_COLORS[mode]}" stroke-width="2"`));
        body.push(text(lx + 24, ly, MODE_LABELS[mode], 'font-size="10" fill="#333"'));
      });
    }
  });
  return svgDocument(width, height, body);
}

export interface ConvergenceInput {
  ensembles: OccupationSeries[]; // each carrying n_traj metadata
  master: OccupationSeries;
}

export function maxDeviation(a: OccupationSeries, b: OccupationSeries, mode: (typeof MODES)[number]): number {
  let dev = 0;
  for (let i = 0; i < a.t.length; i++) {
    dev = Math.max(dev, Math.abs(a.series[mode][i] - b.series[mode][i]));
  }
  return dev;
}

export function renderConvergence(input: ConvergenceInput, title = ""): string {
  const { ensembles, master } = input;
  if (ensembles.length === 0) throw new Error("no ensemble inputs");
  for (const e of ensembles) {
    if (e.t.length !== master.t.length || e.t.some((t, i) => t !== master.t[i])) {
      throw new Error(`time grid of ${e.path} does not match the master-equation grid`);
    }
  }
  const sorted = [...ensembles].sort(
    (a, b) => Number(a.meta["n_traj"] ?? 0) - Number(b.meta["n_traj"] ?? 0),
  );
  const greys = ["#c4c4c4", "#8d8d8d", "#4f4f4f", "#2a2a2a"];

  const width = 640;
  const panelH = 160;
  const margin = { left: 64, right: 16, top: 36, betweenPanels: 30, bottom: 48 };
  const height = margin.top + 3 * panelH + 2 * margin.betweenPanels + margin.bottom;
  const body: string[] = [];
  if (title) body.push(text(width / 2, 20, title, 'font-size="14" text-anchor="middle"'));

  const tDomain: [number, number] = [master.t[0], master.t[master.t.length - 1]];
  MODES.forEach((mode, p) => {
    const boxY = margin.top + p * (panelH + margin.betweenPanels);
    const box = { x: margin.left, y: boxY, width: width - margin.left - margin.right, height: panelH };
    let hi = Math.max(...master.series[mode]);
    for (const e of sorted) hi = Math.max(hi, ...e.series[mode]);
    const xS = linearScale(tDomain, [box.x, box.x + box.width]);
    const yS = linearScale([0, hi === 0 ? 1 : hi * 1.05], [box.y + box.height, box.y]);
    body.push(...axes(box, xS, yS, p === 2 ? TIME_LABEL : "", MODE_LABELS[mode]));

    sorted.forEach((e, i) => {
      const pts = e.t.map((t, k) => [xS(t), yS(e.series[mode][k])] as [number, number]);
      body.push(polyline(pts, `stroke="${greys[i % greys.length]}" stroke-width="1"`));
    });
    const pts = master.t.map((t, k) => [xS(t), yS(master.series[mode][k])] as [number, number]);
    body.push(polyline(pts, `stroke="${MODE_COLORS[mode]}" stroke-width="1.8"`));

    // deviation-from-master inset, recomputed from the same files
    sorted.forEach((e, i) => {
      const dev = maxDeviation(e, master, mode);
      body.push(
        text(box.x + box.width - 8, box.y + 14 + 12 * i,
          `n=${e.meta["n_traj"]}: max dev ${fmt(dev)}`,
          `font-size="9" text-anchor="end" fill="${greys[i % greys.length]}"`),
      );
    });
  });
  return svgDocument(width, height, body);
}

export function renderChevron(data: ChevronData, title = ""): string {
  const width = 640;
  const height = 420;
  const margin = { left: 70, right: 90, top: 36, bottom: 52 };
  const box = {
    x: margin.left,
    y: margin.top,
    width: width - margin.left - margin.right,
    height: height - margin.top - margin.bottom,
  };
  const body: string[] = [];
  if (title) body.push(text(width / 2, 20, title, 'font-size="14" text-anchor="middle"'));

  let lo = Infinity;
  let hi = -Infinity;
  for (const row of data.value) {
    for (const v of row) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  const degenerate = hi - lo <= 0;
  const norm = (v: number) => (degenerate ? 0 : (v - lo) / (hi - lo));

  const nT = data.t.length;
  const nD = data.delta.length;
  const cellW = box.width / nD;
  const cellH = box.height / nT;
  for (let i = 0; i < nT; i++) {
    for (let j = 0; j < nD; j++) {
      // time increases upward
      const x = box.x + j * cellW;
      const y = box.y + box.height - (i + 1) * cellH;
      body.push(rect(x, y, cellW + 0.5, cellH + 0.5, `fill="${heat(norm(data.value[i][j]))}"`));
    }
  }
  const xS = linearScale([data.delta[0], data.delta[nD - 1]], [box.x + cellW / 2, box.x + box.width - cellW / 2]);
  const yS = linearScale([data.t[0], data.t[nT - 1]], [box.y + box.height - cellH / 2, box.y + cellH / 2]);
  body.push(...axes(box, xS, yS, "delta [omega_b]", TIME_LABEL));

  // colorbar
  const barX = box.x + box.width + 18;
  const barW = 14;
  const steps = 48;
  for (let s = 0; s < steps; s++) {
    const y = box.y + box.height - ((s + 1) * box.height) / steps;
    body.push(rect(barX, y, barW, box.height / steps + 0.5, `fill="${heat((s + 0.5) / steps)}"`));
  }
  body.push(rect(barX, box.y, barW, box.height, 'fill="none" stroke="#333"'));
  body.push(text(barX + barW + 4, box.y + 10, fmt(hi), 'font-size="10" fill="#333"'));
  body.push(text(barX + barW + 4, box.y + box.height, fmt(lo), 'font-size="10" fill="#333"'));
  body.push(
    text(barX + barW + 4, box.y + box.height / 2, "E_N [bits]",
      'font-size="10" fill="#333"'),
  );
  if (degenerate) {
    body.push(
      text(box.x + box.width / 2, box.y + box.height / 2, "warning: degenerate value range",
        'font-size="12" text-anchor="middle" fill="#b00"'),
    );
  }
  return svgDocument(width, height, body);
}
