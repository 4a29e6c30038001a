/**
 * plot <kind> --in <files...> --out <image.svg> [--title <t>]
 *
 * kinds: trajectory-panel | ensemble-panel | convergence-comparison |
 *        chevron-heatmap
 *
 * convergence-comparison expects the master-equation file among the inputs
 * (identified by its header) and at least one ensemble file.
 */

import { writeFileSync } from "node:fs";
import { parseChevron, parseOccupations } from "./csv.js";
import { renderChevron, renderConvergence, renderTimeSeries } from "./plots.js";

export interface CliArgs {
  command: string;
  kind: string;
  inputs: string[];
  out: string;
  title: string;
}

export function parseArgs(argv: string[]): CliArgs {
  const [command, kind, ...rest] = argv;
  if (command !== "plot") {
    throw new Error(`unknown command ${command ?? "(none)"}; usage: plot <kind> --in f... --out x.svg`);
  }
  const kinds = ["trajectory-panel", "ensemble-panel", "convergence-comparison", "chevron-heatmap"];
  if (!kinds.includes(kind)) {
    throw new Error(`unknown plot kind ${kind ?? "(none)"}; expected one of ${kinds.join(", ")}`);
  }
  const inputs: string[] = [];
  let out = "";
  let title = "";
  for (let i = 0; i < rest.length; i++) {
    const arg = rest[i];
    if (arg === "--in") {
      while (i + 1 < rest.length && !rest[i + 1].startsWith("--")) inputs.push(rest[++i]);
    } else if (arg === "--out") {
      out = rest[++i] ?? "";
    } else if (arg === "--title") {
      title = rest[++i] ?? "";
    } else {
      throw new Error(`unexpected argument ${arg}`);
    }
  }
  if (inputs.length === 0) throw new Error("--in requires at least one file");
  if (!out) throw new Error("--out is required");
  return { command, kind, inputs, out, title };
}

export function render(kind: string, inputs: string[], title: string): string {
  if (kind === "chevron-heatmap") {
    if (inputs.length !== 1) throw new Error("chevron-heatmap takes exactly one input file");
    return renderChevron(parseChevron(inputs[0]), title);
  }
  const runs = inputs.map(parseOccupations);
  if (kind === "convergence-comparison") {
    const isMaster = (r: (typeof runs)[number]) =>
      (r.meta["_kind"] ?? "").includes("master equation");
    const master = runs.find(isMaster);
    if (!master) throw new Error("convergence-comparison needs the master-equation file among --in");
    const ensembles = runs.filter((r) => r !== master);
    if (ensembles.length === 0) throw new Error("convergence-comparison needs ensemble files");
    return renderConvergence({ ensembles, master }, title);
  }
  if (kind === "ensemble-panel" && runs.length !== 1) {
    throw new Error("ensemble-panel takes exactly one input file");
  }
  return renderTimeSeries(runs, title);
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    const svg = render(args.kind, args.inputs, args.title);
    writeFileSync(args.out, svg, "utf-8");
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
