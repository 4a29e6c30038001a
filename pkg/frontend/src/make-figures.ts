/**
 * Render the five reference figures from the committed fixture exports:
 * three scenario panels, the trajectory-count convergence comparison, and
 * the detuning chevron.  Usage: node dist/make-figures.js [outDir]
 */

import { mkdirSync } from "node:fs";
import { main as cliMain } from "./cli.js";

const outDir = process.argv[2] ?? "figures";
mkdirSync(outDir, { recursive: true });

const fx = (p: string) => new URL(`../fixtures/${p}`, import.meta.url).pathname;

const jobs: Array<[string, string[]]> = [
  ["fig_two_photon.svg", [
    "plot", "trajectory-panel",
    "--in", fx("two-photon/occupations_traj_3.csv"), fx("two-photon/occupations_traj_9.csv"),
    fx("two-photon/occupations_ensemble.csv"),
    "--out", `${outDir}/fig_two_photon.svg`,
    "--title", "two-photon pair exchange",
  ]],
  ["fig_four_photon.svg", [
    "plot", "trajectory-panel",
    "--in", fx("four-photon/occupations_traj_4.csv"), fx("four-photon/occupations_traj_1.csv"),
    fx("four-photon/occupations_ensemble.csv"),
    "--out", `${outDir}/fig_four_photon.svg`,
    "--title", "four-photon exchange",
  ]],
  ["fig_janus.svg", [
    "plot", "trajectory-panel",
    "--in", fx("janus/occupations_traj_4.csv"), fx("janus/occupations_traj_9.csv"),
    fx("janus/occupations_ensemble.csv"),
    "--out", `${outDir}/fig_janus.svg`,
    "--title", "bilateral pair emission",
  ]],
  ["fig_convergence.svg", [
    "plot", "convergence-comparison",
    "--in", fx("two-photon/occupations_ensemble_n5.csv"), fx("two-photon/occupations_ensemble_n15.csv"),
    fx("two-photon/occupations_ensemble_n30.csv"), fx("two-photon/occupations_me.csv"),
    "--out", `${outDir}/fig_convergence.svg`,
    "--title", "trajectory-count convergence",
  ]],
  ["fig_chevron.svg", [
    "plot", "chevron-heatmap",
    "--in", fx("two-photon/chevron.csv"),
    "--out", `${outDir}/fig_chevron.svg`,
    "--title", "entanglement vs detuning",
  ]],
];

let failures = 0;
for (const [name, argv] of jobs) {
  if (cliMain(argv) !== 0) {
    console.error(`failed: ${name}`);
    failures++;
  }
}
process.exit(failures === 0 ? 0 : 1);
