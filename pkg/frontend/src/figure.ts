/**
 * Figure kinds over trace CSVs: activation delay vs t, queue size vs t,
 * and the two-strategy utilization-ratio overlay.
 */

import { writeFileSync } from "fs";

import { BLUE, ORANGE, renderChart, Series } from "./chart.js";
import { readTraceCsv, TraceFile } from "./csv.js";
import { encodePng } from "./png.js";

export const KINDS = ["delay", "queue", "ratio-compare"] as const;
export type FigureKind = (typeof KINDS)[number];

export interface FigureSpec {
  kind: FigureKind;
  input: string;
  input2?: string;
  output: string;
  width?: number;
  height?: number;
  shade?: [number, number];
}

export class FigureError extends Error {}

function seriesFrom(trace: TraceFile, column: "delta" | "queue_len" | "w",
                    color: Series["color"], label?: string): Series {
  return { x: trace.columns.t, y: trace.columns[column], color, label };
}

export function render(spec: FigureSpec): void {
  if (spec.kind === "ratio-compare") {
    if (!spec.input2) {
      throw new FigureError("ratio-compare needs two input CSVs (--in and --in2)");
    }
  } else if (spec.input2) {
    throw new FigureError(`--in2 is only valid for ratio-compare, not ${spec.kind}`);
  }

  const width = spec.width ?? 900;
  const height = spec.height ?? 520;
  let series: Series[];
  let yLabel: string;

  switch (spec.kind) {
    case "delay": {
      series = [seriesFrom(readTraceCsv(spec.input), "delta", BLUE)];
      yLabel = "delta";
      break;
    }
    case "queue": {
      series = [seriesFrom(readTraceCsv(spec.input), "queue_len", BLUE)];
      yLabel = "queue";
      break;
    }
    case "ratio-compare": {
      const first = readTraceCsv(spec.input);
      const second = readTraceCsv(spec.input2 as string);
      series = [
        seriesFrom(first, "w", BLUE, strategyLabel(first, "fcfs")),
        seriesFrom(second, "w", ORANGE, strategyLabel(second, "heuristic")),
      ];
      yLabel = "W(t)";
      break;
    }
  }

  const canvas = renderChart(series, {
    width, height, xLabel: "t", yLabel, shade: spec.shade,
  });
  writeFileSync(spec.output, encodePng(canvas.width, canvas.height, canvas.pixels));
}

function strategyLabel(trace: TraceFile, fallback: string): string {
  return trace.manifest["strategy"] ?? fallback;
}
