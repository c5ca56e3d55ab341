#!/usr/bin/env node
/**
 * slicelab-plot: render PNG figures from slicelab trace CSVs.
 *
 * Usage:
 *   slicelab-plot --kind delay         --in trace.csv --out delay.png
 *   slicelab-plot --kind queue         --in trace.csv --out queue.png [--shade 4000:10000]
 *   slicelab-plot --kind ratio-compare --in a.fcfs.csv --in2 a.heuristic.csv --out w.png
 */

import { CsvError } from "./csv.js";
import { FigureError, FigureSpec, KINDS, render } from "./figure.js";

function usage(): string {
  return [
    "usage: slicelab-plot --kind <delay|queue|ratio-compare> --in <csv>",
    "                     [--in2 <csv>] --out <png> [--shade t1:t2]",
    "                     [--width px] [--height px]",
  ].join("\n");
}

export function parseArgs(argv: string[]): FigureSpec {
  const opts: Record<string, string> = {};
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (!arg.startsWith("--")) throw new FigureError(`unexpected argument '${arg}'`);
    const key = arg.slice(2);
    const value = argv[++i];
    if (value === undefined) throw new FigureError(`missing value for --${key}`);
    opts[key] = value;
  }
  const known = ["kind", "in", "in2", "out", "shade", "width", "height"];
  for (const key of Object.keys(opts)) {
    if (!known.includes(key)) throw new FigureError(`unknown option --${key}`);
  }
  const kind = opts["kind"] as FigureSpec["kind"];
  if (!KINDS.includes(kind)) {
    throw new FigureError(`--kind must be one of ${KINDS.join(", ")}, got '${opts["kind"]}'`);
  }
  if (!opts["in"]) throw new FigureError("--in is required");
  if (!opts["out"]) throw new FigureError("--out is required");

  let shade: [number, number] | undefined;
  if (opts["shade"]) {
    const m = opts["shade"].match(/^(\d+):(\d+)$/);
    if (!m) throw new FigureError(`--shade expects t1:t2, got '${opts["shade"]}'`);
    shade = [Number(m[1]), Number(m[2])];
  }
  const dim = (key: "width" | "height") => {
    if (!(key in opts)) return undefined;
    const v = Number(opts[key]);
    if (!Number.isInteger(v) || v < 100) {
      throw new FigureError(`--${key} must be an integer >= 100`);
    }
    return v;
  };
  return {
    kind,
    input: opts["in"],
    input2: opts["in2"],
    output: opts["out"],
    shade,
    width: dim("width"),
    height: dim("height"),
  };
}

export function main(argv: string[]): number {
  try {
    render(parseArgs(argv));
    return 0;
  } catch (err) {
    if (err instanceof FigureError || err instanceof CsvError) {
      console.error(`error: ${err.message}`);
      console.error(usage());
      return 2;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
