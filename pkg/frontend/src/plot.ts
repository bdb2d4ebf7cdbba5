/**
 * The two report figures: an interference scatter with its concentration
 * band, and a cut-capacity series against its expected value. All numbers
 * shown come from the sidecar JSON; nothing is recomputed here.
 */

import { SchemaError, Table, metaNumber, metaString, parseCsv, parseMeta } from "./csv.js";
import { encodePng } from "./png.js";
import { BLACK, BLUE, Color, GRAY, GREEN, LIGHT_GRAY, ORANGE, RED, Raster } from "./raster.js";
import { textWidth } from "./font.js";

const WIDTH = 960;
const HEIGHT = 600;
const MARGIN = { left: 80, right: 24, top: 56, bottom: 48 } as const;

export function formatNumber(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 100000 || abs < 0.001) {
    return v.toExponential(2).toUpperCase();
  }
  let s = v.toPrecision(4);
  if (s.includes(".")) {
    s = s.replace(/0+$/, "").replace(/\.$/, "");
  }
  return s;
}

interface Frame {
  x0: number;
  y0: number; // bottom-left of the plot area in pixel coordinates
  plotWidth: number;
  plotHeight: number;
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
  toX(v: number): number;
  toY(v: number): number;
}

function makeFrame(xMin: number, xMax: number, yMin: number, yMax: number): Frame {
  if (xMax <= xMin) xMax = xMin + 1;
  if (yMax <= yMin) {
    yMax = yMin + 1;
    yMin -= 1;
  }
  const plotWidth = WIDTH - MARGIN.left - MARGIN.right;
  const plotHeight = HEIGHT - MARGIN.top - MARGIN.bottom;
  return {
    x0: MARGIN.left,
    y0: HEIGHT - MARGIN.bottom,
    plotWidth,
    plotHeight,
    xMin,
    xMax,
    yMin,
    yMax,
    toX(v: number): number {
      return Math.round(MARGIN.left + ((v - xMin) / (xMax - xMin)) * plotWidth);
    },
    toY(v: number): number {
      return Math.round(HEIGHT - MARGIN.bottom - ((v - yMin) / (yMax - yMin)) * plotHeight);
    },
  };
}

function niceStep(range: number, targetTicks: number): number {
  const rough = range / targetTicks;
  const power = Math.pow(10, Math.floor(Math.log10(rough)));
  for (const mult of [1, 2, 5, 10]) {
    if (mult * power >= rough) return mult * power;
  }
  return 10 * power;
}

function drawAxes(canvas: Raster, frame: Frame, xLabel: string, yLabel: string): void {
  canvas.hline(frame.x0, frame.x0 + frame.plotWidth, frame.y0, BLACK);
  canvas.vline(frame.x0, frame.y0 - frame.plotHeight, frame.y0, BLACK);
  const yStep = niceStep(frame.yMax - frame.yMin, 6);
  for (let v = Math.ceil(frame.yMin / yStep) * yStep; v <= frame.yMax + 1e-12; v += yStep) {
    const y = frame.toY(v);
    canvas.hline(frame.x0 + 1, frame.x0 + frame.plotWidth, y, LIGHT_GRAY);
    canvas.hline(frame.x0 - 4, frame.x0, y, BLACK);
    const label = formatNumber(Math.abs(v) < yStep / 1e6 ? 0 : v);
    canvas.text(frame.x0 - 8 - textWidth(label), y - 3, label, BLACK);
  }
  const xStep = niceStep(frame.xMax - frame.xMin, 8);
  for (let v = Math.ceil(frame.xMin / xStep) * xStep; v <= frame.xMax + 1e-12; v += xStep) {
    const x = frame.toX(v);
    canvas.vline(x, frame.y0, frame.y0 + 4, BLACK);
    const label = formatNumber(v);
    canvas.text(x - Math.floor(textWidth(label) / 2), frame.y0 + 8, label, BLACK);
  }
  canvas.text(frame.x0 + frame.plotWidth - textWidth(xLabel), frame.y0 + 22, xLabel, GRAY);
  canvas.text(frame.x0 + 4, frame.y0 - frame.plotHeight - 12, yLabel, GRAY);
}

function drawHeading(canvas: Raster, title: string, subtitle: string): void {
  canvas.text(MARGIN.left, 12, title, BLACK, 2);
  canvas.text(MARGIN.left, 32, subtitle, GRAY);
}

function referenceLine(canvas: Raster, frame: Frame, value: number, color: Color, dash: number, label: string): void {
  if (value < frame.yMin || value > frame.yMax) return;
  const y = frame.toY(value);
  canvas.hline(frame.x0 + 1, frame.x0 + frame.plotWidth, y, color, dash);
  const text = label + "=" + formatNumber(value);
  canvas.text(frame.x0 + frame.plotWidth - textWidth(text) - 4, Math.max(y - 10, frame.y0 - frame.plotHeight), text, color);
}

export function renderInterferenceScatter(csvPath: string, metaPath: string): Buffer {
  const table: Table = parseCsv(csvPath, ["trial", "node_id", "J", "I"]);
  const meta = parseMeta(metaPath, ["study", "interference_field", "empirical_mean", "band_lo", "band_hi"]);
  const study = metaString(meta, "study", metaPath);
  if (study !== "interference") {
    throw new SchemaError(`${metaPath}: study "${study}" does not match kind interference-scatter`);
  }
  const field = metaString(meta, "interference_field", metaPath);
  if (field !== "J" && field !== "I") {
    throw new SchemaError(`${metaPath}: interference_field must be "J" or "I", got "${field}"`);
  }
  const mean = metaNumber(meta, "empirical_mean", metaPath);
  const bandLo = metaNumber(meta, "band_lo", metaPath);
  const bandHi = metaNumber(meta, "band_hi", metaPath);

  const nodes = table.column("node_id");
  const values = table.column(field);
  const yMin = Math.min(0, bandLo, ...values);
  const yMax = Math.max(bandHi, ...values) * 1.05;
  const frame = makeFrame(0, Math.max(...nodes), yMin, yMax);

  const canvas = new Raster(WIDTH, HEIGHT);
  drawHeading(
    canvas,
    "INTERFERENCE PER NODE",
    `FIELD=${field}  VALUES=${values.length}  MEAN=${formatNumber(mean)}  BAND=[${formatNumber(bandLo)}, ${formatNumber(bandHi)}]`,
  );
  drawAxes(canvas, frame, "NODE", field);
  for (let i = 0; i < values.length; i++) {
    canvas.marker(frame.toX(nodes[i]), frame.toY(values[i]), BLUE, 2);
  }
  referenceLine(canvas, frame, mean, RED, 0, "MEAN");
  referenceLine(canvas, frame, bandLo, ORANGE, 4, "LO");
  referenceLine(canvas, frame, bandHi, ORANGE, 4, "HI");
  return encodePng(WIDTH, HEIGHT, canvas.pixels);
}

export function renderCutCapacitySeries(csvPath: string, metaPath: string): Buffer {
  const table: Table = parseCsv(csvPath, ["trial", "k", "cut_capacity"]);
  const meta = parseMeta(metaPath, ["study", "cut_size", "empirical_mean", "expected_cut_capacity"]);
  const study = metaString(meta, "study", metaPath);
  if (study !== "random-cut") {
    throw new SchemaError(`${metaPath}: study "${study}" does not match kind cut-capacity-series`);
  }
  const k = metaNumber(meta, "cut_size", metaPath);
  const mean = metaNumber(meta, "empirical_mean", metaPath);
  const expected = metaNumber(meta, "expected_cut_capacity", metaPath);

  const trials = table.column("trial");
  const values = table.column("cut_capacity");
  const yMin = Math.min(0, ...values);
  const yMax = Math.max(...values, mean, expected) * 1.05;
  const frame = makeFrame(0, Math.max(...trials), yMin, yMax);

  const canvas = new Raster(WIDTH, HEIGHT);
  drawHeading(
    canvas,
    "CAPACITY OF A RANDOM CUT",
    `K=${formatNumber(k)}  TRIALS=${values.length}  MEAN=${formatNumber(mean)}  EXPECTED=${formatNumber(expected)}`,
  );
  drawAxes(canvas, frame, "TRIAL", "CAPACITY");
  for (let i = 1; i < values.length; i++) {
    // connect consecutive trials with a thin vertical-step polyline
    const x1 = frame.toX(trials[i - 1]);
    const x2 = frame.toX(trials[i]);
    const y1 = frame.toY(values[i - 1]);
    const y2 = frame.toY(values[i]);
    canvas.hline(x1, x2, y1, LIGHT_GRAY);
    canvas.vline(x2, y1, y2, LIGHT_GRAY);
  }
  for (let i = 0; i < values.length; i++) {
    canvas.marker(frame.toX(trials[i]), frame.toY(values[i]), BLUE, 3);
  }
  referenceLine(canvas, frame, mean, RED, 0, "MEAN");
  referenceLine(canvas, frame, expected, GREEN, 4, "EXPECTED");
  return encodePng(WIDTH, HEIGHT, canvas.pixels);
}
