/**
 * Small software rasterizer: an RGB canvas with lines, rectangles and
 * bitmap text, plus a line-chart composer with axes, ticks and legends.
 */

import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphRows, textWidth } from "./font.js";

export type Color = readonly [number, number, number];

export const WHITE: Color = [255, 255, 255];
export const BLACK: Color = [30, 30, 30];
export const GRAY: Color = [170, 170, 170];
export const SHADE: Color = [232, 232, 240];
export const BLUE: Color = [31, 119, 180];
export const ORANGE: Color = [255, 127, 14];

export class Canvas {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array;

  constructor(width: number, height: number, background: Color = WHITE) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 3);
    this.fillRect(0, 0, width, height, background);
  }

  set(x: number, y: number, color: Color): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 3;
    this.pixels[i] = color[0];
    this.pixels[i + 1] = color[1];
    this.pixels[i + 2] = color[2];
  }

  fillRect(x0: number, y0: number, w: number, h: number, color: Color): void {
    for (let y = y0; y < y0 + h; y++) {
      for (let x = x0; x < x0 + w; x++) this.set(x, y, color);
    }
  }

  /** Bresenham line; `thick` widens perpendicular-ish by extra pixels. */
  line(x0: number, y0: number, x1: number, y1: number, color: Color, thick = 1): void {
    x0 = Math.round(x0); y0 = Math.round(y0);
    x1 = Math.round(x1); y1 = Math.round(y1);
    const dx = Math.abs(x1 - x0);
    const dy = -Math.abs(y1 - y0);
    const sx = x0 < x1 ? 1 : -1;
    const sy = y0 < y1 ? 1 : -1;
    let err = dx + dy;
    const steep = dy < -dx;
    for (;;) {
      for (let k = 0; k < thick; k++) {
        if (steep) this.set(x0 + k, y0, color);
        else this.set(x0, y0 + k, color);
      }
      if (x0 === x1 && y0 === y1) break;
      const e2 = 2 * err;
      if (e2 >= dy) { err += dy; x0 += sx; }
      if (e2 <= dx) { err += dx; y0 += sy; }
    }
  }

  text(x: number, y: number, s: string, color: Color, scale = 1): void {
    let cx = x;
    for (const ch of s) {
      const rows = glyphRows(ch);
      for (let gy = 0; gy < GLYPH_HEIGHT; gy++) {
        for (let gx = 0; gx < GLYPH_WIDTH; gx++) {
          if (rows[gy][gx] === "#") {
            this.fillRect(cx + gx * scale, y + gy * scale, scale, scale, color);
          }
        }
      }
      cx += (GLYPH_WIDTH + 1) * scale;
    }
  }

  /** Text rotated 90 degrees counter-clockwise (for y-axis labels). */
  textVertical(x: number, y: number, s: string, color: Color, scale = 1): void {
    let cy = y;
    for (const ch of s) {
      const rows = glyphRows(ch);
      for (let gy = 0; gy < GLYPH_HEIGHT; gy++) {
        for (let gx = 0; gx < GLYPH_WIDTH; gx++) {
          if (rows[gy][gx] === "#") {
            this.fillRect(x + gy * scale, cy - gx * scale, scale, scale, color);
          }
        }
      }
      cy -= (GLYPH_WIDTH + 1) * scale;
    }
  }
}

export interface Series {
  x: Float64Array;
  y: Float64Array;
  color: Color;
  label?: string;
}

export interface ChartOptions {
  width: number;
  height: number;
  xLabel: string;
  yLabel: string;
  shade?: [number, number];  // x-interval highlighted behind the series
}

function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) hi = lo + 1;
  const span = hi - lo;
  const step0 = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= step0) { step = m * mag; break; }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 ? 0 : v);
  }
  return ticks;
}

function formatTick(v: number): string {
  if (Number.isInteger(v)) return String(v);
  const s = v.toPrecision(3);
  return s.includes(".") ? s.replace(/\.?0+$/, "") : s;
}

const MARGIN = { left: 64, right: 16, top: 14, bottom: 40 };

/** Compose a line chart into a fresh canvas. */
export function renderChart(seriesList: Series[], opts: ChartOptions): Canvas {
  const canvas = new Canvas(opts.width, opts.height);
  const plotX = MARGIN.left;
  const plotY = MARGIN.top;
  const plotW = opts.width - MARGIN.left - MARGIN.right;
  const plotH = opts.height - MARGIN.top - MARGIN.bottom;

  let xMin = Infinity, xMax = -Infinity, yMin = 0, yMax = -Infinity;
  for (const s of seriesList) {
    for (const v of s.x) { if (v < xMin) xMin = v; if (v > xMax) xMax = v; }
    for (const v of s.y) { if (v < yMin) yMin = v; if (v > yMax) yMax = v; }
  }
  if (!Number.isFinite(xMin)) { xMin = 0; xMax = 1; }
  if (!Number.isFinite(yMax) || yMax <= yMin) yMax = yMin + 1;
  yMax *= 1.05;

  const toPx = (x: number) => plotX + ((x - xMin) / (xMax - xMin)) * plotW;
  const toPy = (y: number) => plotY + plotH - ((y - yMin) / (yMax - yMin)) * plotH;

  if (opts.shade) {
    const [s0, s1] = opts.shade;
    const x0 = Math.max(plotX, Math.round(toPx(Math.max(s0, xMin))));
    const x1 = Math.min(plotX + plotW, Math.round(toPx(Math.min(s1, xMax))));
    if (x1 > x0) canvas.fillRect(x0, plotY, x1 - x0, plotH, SHADE);
  }

  for (const tx of niceTicks(xMin, xMax)) {
    const px = Math.round(toPx(tx));
    canvas.line(px, plotY + plotH, px, plotY + plotH + 4, BLACK);
    const label = formatTick(tx);
    canvas.text(px - Math.floor(textWidth(label) / 2), plotY + plotH + 7, label, BLACK);
  }
  for (const ty of niceTicks(yMin, yMax)) {
    const py = Math.round(toPy(ty));
    canvas.line(plotX - 4, py, plotX, py, BLACK);
    canvas.line(plotX, py, plotX + plotW, py, [238, 238, 238]);
    const label = formatTick(ty);
    canvas.text(plotX - 6 - textWidth(label), py - 3, label, BLACK);
  }

  // frame after gridlines so it stays crisp
  canvas.line(plotX, plotY, plotX, plotY + plotH, BLACK);
  canvas.line(plotX, plotY + plotH, plotX + plotW, plotY + plotH, BLACK);

  for (const s of seriesList) {
    let prevX = NaN, prevY = NaN;
    for (let i = 0; i < s.x.length; i++) {
      const px = toPx(s.x[i]);
      const py = toPy(s.y[i]);
      if (!Number.isNaN(prevX)) canvas.line(prevX, prevY, px, py, s.color);
      prevX = px; prevY = py;
    }
  }

  canvas.text(plotX + plotW - textWidth(opts.xLabel, 2), plotY + plotH + 22,
              opts.xLabel, BLACK, 2);
  canvas.textVertical(6, plotY + Math.floor(plotH / 2) + textWidth(opts.yLabel, 2) / 2,
                      opts.yLabel, BLACK, 2);

  const labelled = seriesList.filter((s) => s.label);
  let ly = plotY + 8;
  for (const s of labelled) {
    const lx = plotX + plotW - 120;
    canvas.line(lx, ly + 6, lx + 24, ly + 6, s.color, 2);
    canvas.text(lx + 30, ly, s.label as string, BLACK, 2);
    ly += 20;
  }
  return canvas;
}
